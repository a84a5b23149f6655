#include "pbtk/serialize.hpp"

#include <cmath>

#include "pbtk/errors.hpp"

namespace pbtk {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(std::string(what) + ": missing field '" + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw ConfigError(std::string(what) + ": expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string(what) + ": non-finite value");
    return v;
}

Json row_major(const Operator& op) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index k = 0; k < op.cols(); ++k) data.push_back(complex_to_json(op(i, k)));
    return data;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const char* what) {
    if (j.is_number()) return {number(j, what), 0.0};
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + ": expected [re, im]");
    return {number(j[0], what), number(j[1], what)};
}

Json operator_to_json(const Operator& op) {
    if (op.rows() != op.cols()) throw DomainError("operator_to_json: operator must be square");
    return Json{{"dim", op.rows()}, {"data", row_major(op)}};
}

Operator operator_from_json(const Json& j) {
    const Json& dim = field(j, "dim", "operator");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) throw ConfigError("operator: 'dim' must be a positive integer");
    const Eigen::Index d = dim.get<long long>();
    const Json& data = field(j, "data", "operator");
    if (!data.is_array() || Eigen::Index(data.size()) != d * d)
        throw ConfigError("operator: 'data' must hold dim*dim entries");
    Operator op(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k) op(i, k) = complex_from_json(data[i * d + k], "operator.data");
    return op;
}

Json ket_to_json(const Ket& k) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < k.size(); ++i) data.push_back(complex_to_json(k(i)));
    return Json{{"dim", k.size()}, {"data", data}};
}

Ket ket_from_json(const Json& j) {
    const Json& dim = field(j, "dim", "ket");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) throw ConfigError("ket: 'dim' must be a positive integer");
    const Eigen::Index d = dim.get<long long>();
    const Json& data = field(j, "data", "ket");
    if (!data.is_array() || Eigen::Index(data.size()) != d) throw ConfigError("ket: 'data' must hold dim entries");
    Ket k(d);
    for (Eigen::Index i = 0; i < d; ++i) k(i) = complex_from_json(data[i], "ket.data");
    return k;
}

Json basis_to_json(const epf::EpfBasis& basis) {
    Json v = Json::array();
    for (const auto& h : basis.h) v.push_back(ket_to_json(h));
    return Json{{"M", basis.M}, {"vectors", v}};
}

epf::EpfBasis basis_from_json(const Json& j) {
    const Json& M = field(j, "M", "basis");
    if (!M.is_number_integer() || M.get<long long>() < 0) throw ConfigError("basis: 'M' must be a non-negative integer");
    const Json& vs = field(j, "vectors", "basis");
    if (!vs.is_array()) throw ConfigError("basis: 'vectors' must be an array");
    epf::EpfBasis b;
    b.M = int(M.get<long long>());
    for (const auto& v : vs) b.h.push_back(ket_from_json(v));
    if (int(b.h.size()) != b.M + 1) throw ConfigError("basis: expected M+1 vectors");
    return b;
}

Json pf_system_to_json(const pf::PfSystem& sys) {
    return Json{{"a", operator_to_json(sys.pair.a)},
                {"b", operator_to_json(sys.pair.b)},
                {"phi", Json::array({ket_to_json(sys.phi[0]), ket_to_json(sys.phi[1])})},
                {"psi", Json::array({ket_to_json(sys.psi[0]), ket_to_json(sys.psi[1])})},
                {"Sphi", operator_to_json(sys.Sphi)},
                {"Spsi", operator_to_json(sys.Spsi)},
                {"T", operator_to_json(sys.T)},
                {"c", operator_to_json(sys.c)}};
}

Json gauss_to_json(const gauss2d::GaussPoly& s) {
    Json Q = Json::array();
    for (int i = 0; i < 2; ++i) Q.push_back(Json::array({complex_to_json(s.Q(i, 0)), complex_to_json(s.Q(i, 1))}));
    Json P = Json::array();
    const auto& t = s.P.table();
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < t.cols(); ++k) row.push_back(complex_to_json(t(i, k)));
        P.push_back(row);
    }
    return Json{{"Q", Q}, {"L", Json::array({complex_to_json(s.L(0)), complex_to_json(s.L(1))})}, {"P", P}};
}

gauss2d::GaussPoly gauss_from_json(const Json& j) {
    gauss2d::GaussPoly s;
    const Json& Q = field(j, "Q", "gausspoly");
    if (!Q.is_array() || Q.size() != 2) throw ConfigError("gausspoly: 'Q' must be 2x2");
    for (int i = 0; i < 2; ++i) {
        if (!Q[i].is_array() || Q[i].size() != 2) throw ConfigError("gausspoly: 'Q' must be 2x2");
        for (int k = 0; k < 2; ++k) s.Q(i, k) = complex_from_json(Q[i][k], "gausspoly.Q");
    }
    const Json& L = field(j, "L", "gausspoly");
    if (!L.is_array() || L.size() != 2) throw ConfigError("gausspoly: 'L' must hold two entries");
    for (int i = 0; i < 2; ++i) s.L(i) = complex_from_json(L[i], "gausspoly.L");
    const Json& P = field(j, "P", "gausspoly");
    if (!P.is_array()) throw ConfigError("gausspoly: 'P' must be a table");
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (!P[i].is_array()) throw ConfigError("gausspoly: 'P' rows must be arrays");
        for (std::size_t k = 0; k < P[i].size(); ++k) {
            Complex c = complex_from_json(P[i][k], "gausspoly.P");
            if (c != Complex(0.0)) s.P.at(int(i), int(k)) = c;
        }
    }
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

}  // namespace pbtk
