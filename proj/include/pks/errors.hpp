#pragma once

#include <stdexcept>
#include <string>

namespace pks {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define PKS_ERROR(Name)                      \
    struct Name : Error {                    \
        using Error::Error;                  \
    }

PKS_ERROR(DomainError);
PKS_ERROR(CompatibilityError);
PKS_ERROR(BracketError);
PKS_ERROR(QuadratureError);
PKS_ERROR(StallError);
PKS_ERROR(SpecError);
PKS_ERROR(CflViolation);
PKS_ERROR(NewtonDivergence);
PKS_ERROR(GeometryError);
PKS_ERROR(LayerOverflow);
PKS_ERROR(EmptyInterface);
PKS_ERROR(ShapeError);
PKS_ERROR(ValidationError);

#undef PKS_ERROR

struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

} // namespace pks
