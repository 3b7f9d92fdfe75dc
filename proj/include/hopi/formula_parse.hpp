#pragma once

#include <string>

#include "hopi/formula.hpp"
#include "hopi/parse.hpp"

namespace hopi {

// Formula grammar (loosest to tightest): `A -> B`; `A or B`; `A and B`;
// `A |> B`; `A | B`; postfix `A \ in a(X)`, `A \ out a`, `A / a`; prefix
// `not`, `<tau>`, `<a<A>>`, `<a[A]>`, `<'a<A>>`, `<<eps>>`, `<<a<A>>>`,
// `<<a[A]>>`, `<<'a<A>>>`, `in a(X).`, `out a<A>.`, `(N x)`, `(NV X)`,
// `(- a)`, `(~-)`, `a @`, `mu X.`; atoms `T`, `F`, `0`, `X`, `a != b`,
// parentheses. `mu` bodies must be positive in the bound variable.
FormPtr parse_formula(const std::string& text);

}  // namespace hopi
