#pragma once

#include <stdexcept>
#include <string>

namespace collage {

/// Base class for all domain errors. `code()` is a stable machine-readable
/// identifier; the message is free-form.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define COLLAGE_DEFINE_ERROR(NAME)                                      \
    class NAME : public Error {                                         \
    public:                                                             \
        explicit NAME(const std::string& message) : Error(#NAME, message) {} \
    }

COLLAGE_DEFINE_ERROR(IndeterminateValue);
COLLAGE_DEFINE_ERROR(EmptyPolyhedron);
COLLAGE_DEFINE_ERROR(NotStronglyConvex);
COLLAGE_DEFINE_ERROR(SlopeUnbounded);
COLLAGE_DEFINE_ERROR(NotSubPolyhedron);
COLLAGE_DEFINE_ERROR(BaseMismatch);
COLLAGE_DEFINE_ERROR(DisconnectedChart);
COLLAGE_DEFINE_ERROR(PathMismatch);
COLLAGE_DEFINE_ERROR(NotGluingStable);
COLLAGE_DEFINE_ERROR(RankDeficient);
COLLAGE_DEFINE_ERROR(InvalidFlag);
COLLAGE_DEFINE_ERROR(PointOutside);
COLLAGE_DEFINE_ERROR(BasePointMismatch);
COLLAGE_DEFINE_ERROR(OutsidePolyhedron);
COLLAGE_DEFINE_ERROR(AmbiguousSign);
COLLAGE_DEFINE_ERROR(DimensionMismatch);
COLLAGE_DEFINE_ERROR(SyntaxError);
COLLAGE_DEFINE_ERROR(SemanticError);

#undef COLLAGE_DEFINE_ERROR

} // namespace collage
