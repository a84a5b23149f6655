#pragma once

#include "pbtk/epf.hpp"
#include "pbtk/gauss2d.hpp"
#include "pbtk/numkernel.hpp"
#include "pbtk/pseudofermion.hpp"
#include "pbtk/report.hpp"

namespace pbtk {

// Operators and kets travel as {"dim": d, "data": [[re, im], ...]}, row-major.
// Malformed input raises ConfigError naming the offending field.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const char* what = "complex");

Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json ket_to_json(const Ket& k);
Ket ket_from_json(const Json& j);

/// {"M": M, "vectors": [ket, ...]}
Json basis_to_json(const epf::EpfBasis& basis);
epf::EpfBasis basis_from_json(const Json& j);

Json pf_system_to_json(const pf::PfSystem& sys);

/// {"Q": [[z, z], [z, z]], "L": [z, z], "P": [[z, ...], ...]} with z = [re, im].
Json gauss_to_json(const gauss2d::GaussPoly& s);
gauss2d::GaussPoly gauss_from_json(const Json& j);

}  // namespace pbtk
