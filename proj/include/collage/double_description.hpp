#pragma once

#include "collage/linalg.hpp"

namespace collage {

/// Generator description of a polyhedral cone in R^d:
///   cone = span(lineality) + nonneg-span(rays).
/// Rays are primitive and extreme modulo the lineality space.
struct ConeGenerators {
    QMat rays;
    QMat lineality;
};

/// Incremental double description: extreme rays and lineality of
/// { x : a . x <= 0 for every a in halfspaces }.
ConeGenerators double_description(const QMat& halfspaces, std::size_t dim);

} // namespace collage
