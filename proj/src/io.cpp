#include "schurkit/io.hpp"

#include <cstdio>
#include <fstream>

namespace schurkit {

namespace {

const Json& need(const Json& j, const char* key, const char* who) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string(who) + ": missing key \"" + key + "\"");
    return j.at(key);
}

Eigen::Index need_index(const Json& j, const char* key, const char* who) {
    const Json& v = need(j, key, who);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(std::string(who) + ": \"" + key + "\" must be a nonnegative integer");
    return static_cast<Eigen::Index>(v.get<long long>());
}

bool is_pair(const Json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

Complex pair_to_complex(const Json& j, const char* who) {
    if (!is_pair(j))
        throw ParseError(std::string(who) + ": matrix entries must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<CMatrix> matrix_list_from_json(const Json& j, const char* who) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(who) + ": expected a nonempty array of matrices");
    std::vector<CMatrix> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(matrix_from_json(item));
    return out;
}

Json matrix_list_to_json(const std::vector<CMatrix>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(matrix_to_json(m));
    return out;
}

} // namespace

Json matrix_to_json(const CMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j) {
    const char* who = "matrix";
    if (j.is_object()) {
        const Eigen::Index rows = need_index(j, "rows", who);
        const Eigen::Index cols = need_index(j, "cols", who);
        const Json& data = need(j, "data", who);
        if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
            throw ParseError("matrix: \"data\" must hold rows*cols entries");
        CMatrix m(rows, cols);
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index jj = 0; jj < cols; ++jj, ++k)
                m(i, jj) = pair_to_complex(data[static_cast<size_t>(k)], who);
        return m;
    }
    if (j.is_array() && !j.empty()) {
        // nested rows-of-pairs shorthand
        if (j[0].is_array() && !j[0].empty() && is_pair(j[0][0])) {
            const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
            const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
            CMatrix m(rows, cols);
            for (Eigen::Index i = 0; i < rows; ++i) {
                const Json& row = j[static_cast<size_t>(i)];
                if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
                    throw ParseError("matrix: ragged rows in shorthand form");
                for (Eigen::Index jj = 0; jj < cols; ++jj)
                    m(i, jj) = pair_to_complex(row[static_cast<size_t>(jj)], who);
            }
            return m;
        }
        // flat singleton-pair shorthand
        if (j.size() == 1 && is_pair(j[0])) {
            CMatrix m(1, 1);
            m(0, 0) = pair_to_complex(j[0], who);
            return m;
        }
        if (is_pair(j)) {
            CMatrix m(1, 1);
            m(0, 0) = pair_to_complex(j, who);
            return m;
        }
    }
    throw ParseError("matrix: expected {\"rows\",\"cols\",\"data\"} or a pairs shorthand");
}

Json series_to_json(const MatSeries& s) {
    return Json{{"order", s.order()}, {"coeffs", matrix_list_to_json(s.coeffs())}};
}

MatSeries series_from_json(const Json& j) {
    const char* who = "series";
    std::vector<CMatrix> coeffs = matrix_list_from_json(need(j, "coeffs", who), who);
    MatSeries s{std::move(coeffs)};
    if (j.contains("order")) {
        const Eigen::Index k = need_index(j, "order", who);
        if (static_cast<int>(k) != s.order())
            throw ParseError("series: \"order\" disagrees with the coefficient count");
    }
    return s;
}

Json sequence_to_json(const ChoiceSequence& cs) {
    return Json{{"m", cs.m},
                {"n", cs.n},
                {"gammas", matrix_list_to_json(cs.gammas)},
                {"in_bases", matrix_list_to_json(cs.in_bases)},
                {"out_bases", matrix_list_to_json(cs.out_bases)}};
}

ChoiceSequence sequence_from_json(const Json& j) {
    const char* who = "choice sequence";
    ChoiceSequence cs;
    cs.m = need_index(j, "m", who);
    cs.n = need_index(j, "n", who);
    cs.gammas = matrix_list_from_json(need(j, "gammas", who), who);
    cs.in_bases = matrix_list_from_json(need(j, "in_bases", who), who);
    cs.out_bases = matrix_list_from_json(need(j, "out_bases", who), who);
    return cs;
}

Json problem_to_json(const SchurProblem& p) {
    return Json{{"coeffs", matrix_list_to_json(p.coeffs)}};
}

SchurProblem problem_from_json(const Json& j) {
    const char* who = "problem";
    return make_problem(matrix_list_from_json(need(j, "coeffs", who), who));
}

Json colligation_to_json(const Colligation& col) {
    return Json{{"m", col.m}, {"h", col.h}, {"U", matrix_to_json(col.U)}};
}

Colligation colligation_from_json(const Json& j, const Tolerances& tol) {
    const char* who = "colligation";
    const Eigen::Index m = need_index(j, "m", who);
    const Eigen::Index h = need_index(j, "h", who);
    CMatrix u = matrix_from_json(need(j, "U", who));
    if (u.rows() != m + h)
        throw ParseError("colligation: U side does not equal m + h");
    return make_colligation(m, std::move(u), tol);
}

Subspace subspace_from_json(const Json& j, const Tolerances& tol) {
    const char* who = "subspace";
    return make_subspace(matrix_from_json(need(j, "basis", who)), tol);
}

Json tolerances_to_json(const Tolerances& tol) {
    return Json{{"contraction_slack", tol.contraction_slack},
                {"rank_rel_tol", tol.rank_rel_tol},
                {"match_tol", tol.match_tol}};
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const Json& canonical) {
    const std::string dump = canonical.dump();
    std::uint64_t h = fnv1a64(dump);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw ParseError("failed writing file: " + path);
}

} // namespace schurkit
