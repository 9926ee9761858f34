#ifndef MAASSCLASS_SERIALIZE_HPP
#define MAASSCLASS_SERIALIZE_HPP

// JSON views of the result types. Keys are emitted in declaration order and
// every floating value is a decimal string with explicit precision, so equal
// runs produce byte-identical output.

#include "bounds.hpp"
#include "classpoly.hpp"
#include "irreducibility.hpp"
#include "poincare.hpp"
#include "quadforms.hpp"

#include <json.hpp>

#include <string>

namespace maassclass {

using Json = nlohmann::ordered_json;

inline std::string rational_str(const Rational& q) { return q.str(); }

inline std::string real_decimal(const Real& x, unsigned digits10 = 30) {
    return x.str(digits10);
}

inline std::string double_decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline Json json_of(const RecognitionReport& r) {
    return Json{{"max_imag", real_decimal(r.max_imag, 12)},
                {"max_distance", real_decimal(r.max_distance, 12)},
                {"denominator_bound", r.denom_bound.str()}};
}

inline Json json_of(const RationalPolynomial& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(rational_str(c));
    return Json{{"degree", p.degree()},
                {"coefficients", coeffs},
                {"expression", p.str()},
                {"recognition_report", json_of(p.report)}};
}

inline Json json_of(const Verdict& v) {
    Json out;
    switch (v.kind) {
    case Verdict::Kind::Irreducible:
        out["status"] = "irreducible";
        out["certificate"] = v.certificate;
        if (v.certificate_prime > 0) out["certificate_prime"] = v.certificate_prime;
        break;
    case Verdict::Kind::Reducible: {
        out["status"] = "reducible";
        Json coeffs = Json::array();
        for (const auto& c : v.factor.coeffs) coeffs.push_back(rational_str(c));
        out["factor"] = coeffs;
        out["factor_expression"] = v.factor.str();
        break;
    }
    case Verdict::Kind::Inconclusive:
        out["status"] = "inconclusive";
        out["primes_tried"] = v.primes_tried;
        break;
    }
    return out;
}

inline Json json_of(const QuadForm& q) {
    return Json{{"a", q.a}, {"b", q.b}, {"c", q.c}};
}

inline Json json_of(const BoundReport& rep, unsigned digits10 = 30) {
    return Json{
        {"k", rep.inputs.k},
        {"m", rep.inputs.m},
        {"c", double_decimal(rep.inputs.c)},
        {"discriminant", rep.inputs.D},
        {"sqrt_minus_d", real_decimal(rep.sqrt_minus_d, digits10)},
        {"B0", real_decimal(rep.constants.b0, digits10)},
        {"B1", real_decimal(rep.constants.b1, digits10)},
        {"B2", real_decimal(rep.constants.b2, digits10)},
        {"B3", real_decimal(rep.constants.b3, digits10)},
        {"B4", real_decimal(rep.constants.b4, digits10)},
        {"B", real_decimal(rep.B, digits10)},
        {"pochhammer_sum", real_decimal(rep.pochhammer_sum_value, digits10)},
        {"theorem",
         Json{{"rhs", real_decimal(rep.theorem.rhs, digits10)},
              {"applicable", rep.theorem.applicable},
              {"guaranteed", rep.theorem.guaranteed}}},
        {"corollary",
         Json{{"rhs1", real_decimal(rep.corollary.rhs1, digits10)},
              {"rhs2", real_decimal(rep.corollary.rhs2, digits10)},
              {"guaranteed", rep.corollary.guaranteed}}}};
}

inline Json json_of(const GridEntry& e) {
    return Json{{"n", e.n},
                {"k", e.k},
                {"l", e.l},
                {"partial", double_decimal(e.partial)},
                {"bound", double_decimal(e.bound)},
                {"ratio", double_decimal(e.ratio)},
                {"pass", e.pass}};
}

} // namespace maassclass

#endif
