#pragma once

#include <memory>

#include "hadsw/manifold.hpp"

namespace hadsw::detail {

std::shared_ptr<const Manifold> make_euclidean(const ManifoldDescriptor& d);
std::shared_ptr<const Manifold> make_mahalanobis(const ManifoldDescriptor& d);
std::shared_ptr<const Manifold> make_lorentz(const ManifoldDescriptor& d);
std::shared_ptr<const Manifold> make_poincare(const ManifoldDescriptor& d);
std::shared_ptr<const Manifold> make_spd(const ManifoldDescriptor& d);
std::shared_ptr<const Manifold> make_product(const ManifoldDescriptor& d);

}  // namespace hadsw::detail
