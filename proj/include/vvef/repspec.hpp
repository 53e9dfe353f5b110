#pragma once

#include "vvef/representations.hpp"

#include <string_view>

namespace vvef {

// "MOD:IDX" or "MOD:triv", IDX indexing enumerate_chars(MOD)
DirichletChar parse_char(std::string_view s);

// triv | rho3 | ind:N:CHAR | hecke:M:SPEC | tensor(A, B) | dual(A) | sum(A, B, ...)
RepPtr parse_rep(std::string_view s);

// the 3-dimensional complement of 1 in Ind_{Gamma0(3)} 1
RepPtr rho3_rep();

}  // namespace vvef
