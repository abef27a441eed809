#pragma once

#include <string>
#include <vector>

#include "pullcurv/manifold.hpp"
#include "pullcurv/numerics.hpp"
#include "pullcurv/submanifold.hpp"

namespace pullcurv::spaces {

// ----- ambient maps (analytic derivatives where they are one-liners) -----

AmbientMap sphere_constraint(int ambient_dim, double radius);

// Hopf map h(a,b) = (|a|^2 - |b|^2, 2 a conj(b)) : R^8 -> R^5.
AmbientMap hopf_map();
// Dual Hopf map h~(a,b) = (|a|^2 - |b|^2, 2 conj(a) b).
AmbientMap dual_hopf_map();
// eta(y) = y i conj(y) : R^4 -> R^4 (image purely imaginary).
AmbientMap eta_map();
AmbientMap antipodal_map(int dim);
// y -> y^k on quaternions (k != 0; negative k inverts first).
AmbientMap quat_power_map(int k);
// Suspension phi_k(x,y) = (x, y^k)/|(x, y^k)| : R^5 -> R^5.
AmbientMap suspension_power_map(int k);
// Octonion power phi_n : R^8 -> R^8 (0-homogeneous extension off the sphere).
AmbientMap cayley_power_map(int n);
// Smooth suspension of eta, normalized: R^9 -> R^8.
AmbientMap susp8_phi_map();
// J-construction model Jtau(x,y) = tau(y/|y|) x/|x| : R^{4n+2} -> R^{2n+1};
// throws DomainError near the singular loci |y| ~ 0 or |x| ~ 0.
AmbientMap kervaire_map(int n, double floor = 1e-9);

// ----- manifolds -----

// Round sphere of the given radius in R^{ambient_dim}. `analytic` = false
// drops the closed-form derivatives to exercise the finite-difference path.
ManifoldPtr sphere(int ambient_dim, double radius = 1.0, bool analytic = true,
                   std::string name = "");

// Product embedded in the direct sum of the ambient spaces.
ManifoldPtr product(const ManifoldPtr& a, const ManifoldPtr& b, std::string name = "");

// Sp(2) as pairs of quaternionic columns in R^16 (unit columns, H-orthogonal).
ManifoldPtr sp2_manifold();

// Wilhelm space Sp(2,m) in (R^8)^m, m >= 2.
ManifoldPtr wilhelm_manifold(int m);

// Pullback total space {(m, p) in M x S^7 : f(m) = h(p)} for f : M -> S^4.
ManifoldPtr pullback_total(const std::string& name, const ManifoldPtr& M, const AmbientMap& f);

// Graph of f : M -> R^b, embedded in amb(M) x R^b with the product metric.
ManifoldPtr graph_space(const std::string& name, const ManifoldPtr& M, const AmbientMap& f);

// ----- submanifold helpers -----

// Linear constraints x[c] = value for each listed coordinate.
AmbientMap coordinate_pin_constraint(int ambient_dim, const std::vector<int>& coords,
                                     const std::vector<double>& values);

// Great subsphere of a round sphere obtained by zeroing coordinates.
Submanifold great_subsphere(const ManifoldPtr& S, const std::vector<int>& zero_coords,
                            const std::string& name);

}  // namespace pullcurv::spaces
