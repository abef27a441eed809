#include "pullcurv/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pullcurv/errors.hpp"

namespace pullcurv::report {

std::string render(const json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.good()) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace pullcurv::report
