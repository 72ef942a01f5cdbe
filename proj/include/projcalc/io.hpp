/*
 * io.hpp — JSON wire formats.
 *
 *   matrix          {"dim": n, "re": [[..]], "im": [[..]]}   row-major
 *   scalar function {"breakpoints": [[x,y],..], "jump_at_zero": bool}
 *   block algebra   {"blocks": [n1, ..]}
 *   quotient map    {"kept": [source indices]}
 *   pure state      {"re": [..], "im": [..]}
 *   homotopy path   {"parameters": [..], "steps": [matrix, ..]}
 */
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "block.hpp"
#include "homotopy.hpp"
#include "scalar_function.hpp"
#include "states.hpp"
#include "types.hpp"

namespace projcalc {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const Mat& m) {
    const long n = m.rows();
    json re = json::array(), im = json::array();
    for (long i = 0; i < n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (long j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"dim", n}, {"re", re}, {"im", im}};
}

inline Mat matrix_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("re"))
        throw DomainError("matrix JSON: need 'dim' and 're'");
    const long n = j.at("dim").get<long>();
    if (n < 1) throw DomainError("matrix JSON: dim must be positive");
    Mat m(n, n);
    const auto& re = j.at("re");
    const bool has_im = j.contains("im") && !j.at("im").is_null();
    if (static_cast<long>(re.size()) != n)
        throw DomainError("matrix JSON: 're' row count does not match dim");
    for (long i = 0; i < n; ++i) {
        if (static_cast<long>(re.at(i).size()) != n)
            throw DomainError("matrix JSON: 're' column count does not match dim");
        for (long j2 = 0; j2 < n; ++j2) {
            double rv = re.at(i).at(j2).get<double>();
            double iv = has_im ? j.at("im").at(i).at(j2).get<double>() : 0.0;
            m(i, j2) = cx(rv, iv);
        }
    }
    return m;
}

inline json scalar_function_to_json(const ScalarFunction& f) {
    json bp = json::array();
    for (const auto& [x, y] : f.breakpoints) bp.push_back(json::array({x, y}));
    return json{{"breakpoints", bp}, {"jump_at_zero", f.jump_at_zero}};
}

inline ScalarFunction scalar_function_from_json(const json& j) {
    std::vector<std::pair<double, double>> bp;
    for (const auto& e : j.at("breakpoints"))
        bp.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    bool jump = j.value("jump_at_zero", false);
    return ScalarFunction(bp, jump);
}

inline json block_algebra_to_json(const BlockAlgebra& a) {
    return json{{"blocks", a.block_dims}};
}

inline BlockAlgebra block_algebra_from_json(const json& j) {
    return BlockAlgebra(j.at("blocks").get<std::vector<int>>());
}

inline json quotient_map_to_json(const QuotientMap& q) {
    return json{{"kept", q.kept_blocks}};
}

inline QuotientMap quotient_map_from_json(const json& j, const BlockAlgebra& source) {
    return QuotientMap(source, j.at("kept").get<std::vector<int>>());
}

inline json pure_state_to_json(const PureState& s) {
    json re = json::array(), im = json::array();
    for (long i = 0; i < s.vector.size(); ++i) {
        re.push_back(s.vector(i).real());
        im.push_back(s.vector(i).imag());
    }
    return json{{"re", re}, {"im", im}};
}

inline PureState pure_state_from_json(const json& j) {
    const auto& re = j.at("re");
    const bool has_im = j.contains("im") && !j.at("im").is_null();
    Vec v(static_cast<long>(re.size()));
    for (long i = 0; i < v.size(); ++i)
        v(i) = cx(re.at(i).get<double>(), has_im ? j.at("im").at(i).get<double>() : 0.0);
    return PureState(v);
}

inline json homotopy_path_to_json(const HomotopyPath& p) {
    json steps = json::array();
    for (const auto& s : p.steps) steps.push_back(matrix_to_json(s));
    return json{{"parameters", p.parameters}, {"steps", steps}};
}

} // namespace projcalc
