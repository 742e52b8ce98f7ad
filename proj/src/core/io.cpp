#include "io.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"
#include "fixtures.hpp"

namespace homct {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    fail(ErrorCode::Schema, "schema error at " + path + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
    if (!j.is_object()) schema_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t read_size(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

Scalar read_scalar(const Json& j, const std::string& path, Scalar p) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    const long long x = j.get<long long>();
    if (x < 0 || x >= static_cast<long long>(p)) schema_error(path, "expected an integer in [0, p)");
    return static_cast<Scalar>(x);
}

const Json& read_array(const Json& j, const std::string& path, std::size_t len) {
    if (!j.is_array()) schema_error(path, "expected an array");
    if (j.size() != len)
        schema_error(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(j.size()));
    return j;
}

Vector read_vector(const Json& j, const std::string& path, std::size_t len, Scalar p) {
    read_array(j, path, len);
    Vector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = read_scalar(j[i], path + "[" + std::to_string(i) + "]", p);
    return v;
}

Matrix read_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols, Scalar p) {
    read_array(j, path, rows);
    Matrix m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        read_array(j[r], rp, cols);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = read_scalar(j[r][c], rp + "[" + std::to_string(c) + "]", p);
    }
    return m;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Scalar x : v) out.push_back(x);
    return out;
}

}  // namespace

AlgebraPtr algebra_from_json(const Json& j) {
    const std::size_t pv = read_size(field(j, "$", "p"), "$.p");
    if (pv < 2 || pv >= 65536) schema_error("$.p", "expected a prime below 65536");
    const Scalar p = static_cast<Scalar>(pv);
    const std::size_t dim = read_size(field(j, "$", "dim"), "$.dim");
    if (dim == 0) schema_error("$.dim", "expected a positive dimension");
    const Json& basis = read_array(field(j, "$", "basis"), "$.basis", dim);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!basis[i].is_string()) schema_error("$.basis[" + std::to_string(i) + "]", "expected a string");
        names.push_back(basis[i].get<std::string>());
    }
    Vector unit = read_vector(field(j, "$", "unit"), "$.unit", dim, p);
    const Json& mul = read_array(field(j, "$", "mul"), "$.mul", dim);
    std::vector<std::vector<Vector>> table(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const std::string rp = "$.mul[" + std::to_string(a) + "]";
        read_array(mul[a], rp, dim);
        for (std::size_t b = 0; b < dim; ++b)
            table[a].push_back(read_vector(mul[a][b], rp + "[" + std::to_string(b) + "]", dim, p));
    }
    if (auto err = validate_algebra(p, dim, unit, table)) fail(ErrorCode::Validation, "invalid algebra: " + *err);
    return Algebra::create(p, std::move(names), std::move(unit), std::move(table));
}

Json algebra_to_json(const Algebra& a) {
    Json mul = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(vector_to_json(a.product(i, j)));
        mul.push_back(std::move(row));
    }
    return Json{{"p", a.p()}, {"dim", a.dim()}, {"basis", a.basis_names()}, {"unit", vector_to_json(a.unit())},
                {"mul", std::move(mul)}};
}

FdModule module_from_json(const Json& j, const AlgebraPtr& a) {
    const Json& side_j = field(j, "$", "side");
    if (!side_j.is_string() || (side_j != "left" && side_j != "right"))
        schema_error("$.side", "expected \"left\" or \"right\"");
    const Side side = side_j == "left" ? Side::Left : Side::Right;
    const std::size_t dim = read_size(field(j, "$", "dim"), "$.dim");
    const Json& act = read_array(field(j, "$", "action"), "$.action", a->dim());
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < a->dim(); ++i)
        action.push_back(read_matrix(act[i], "$.action[" + std::to_string(i) + "]", dim, dim, a->p()));
    if (auto err = validate_module(a, side, action)) fail(ErrorCode::Validation, "invalid module: " + *err);
    return FdModule(a, side, std::move(action), true);
}

Json module_to_json(const FdModule& m, const std::string& algebra_ref) {
    Json act = Json::array();
    for (const auto& x : m.actions()) act.push_back(matrix_to_json(x));
    return Json{{"algebra", algebra_ref}, {"side", side_name(m.side())}, {"dim", m.dim()}, {"action", std::move(act)}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::Io, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::Schema, "schema error in " + path.string() + ": not valid JSON (" + e.what() + ")");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::Io, "cannot write " + path.string());
    out << text;
    require(out.good(), ErrorCode::Io, "write failed for " + path.string());
}

AlgebraPtr parse_algebra_file(const std::filesystem::path& path) { return algebra_from_json(read_json_file(path)); }

FdModule parse_module_file(const std::filesystem::path& path) {
    Json j = read_json_file(path);
    const Json& ref = field(j, "$", "algebra");
    if (!ref.is_string()) schema_error("$.algebra", "expected a file name or fixture name");
    const std::string name = ref.get<std::string>();
    AlgebraPtr a;
    std::filesystem::path ap = path.parent_path() / name;
    if (std::filesystem::exists(ap))
        a = parse_algebra_file(ap);
    else if (name.size() == 2 && (name[0] == 'A' || name[0] == 'a'))
        a = algebra_by_name(std::string("a") + name[1]);
    else
        fail(ErrorCode::Io, "algebra file not found: " + ap.string());
    return module_from_json(j, a);
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

Json tower_to_json(const Tower& t) {
    Json maps = Json::array();
    for (std::size_t k = 1; k < t.maps.size(); ++k) maps.push_back(matrix_to_json(t.maps[k]));
    return Json{{"kind", tower_kind_name(t.provenance)}, {"degree", t.degree}, {"dims", t.dims}, {"maps", maps}};
}

Json stabilization_to_json(const StabilizationReport& r) {
    Json j{{"verdict", verdict_name(r.verdict)},
           {"window", r.window},
           {"dims", r.dims},
           {"image_chain", r.image_chain}};
    if (r.verdict == Verdict::Stabilized) {
        j["limit_dim"] = r.limit_dim;
        j["stable_from"] = r.stable_from;
        j["stable_to"] = r.stable_to;
    }
    if (r.verdict == Verdict::NotStabilized) j["lower_bound"] = r.lower_bound;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json resolution_dump(const FdModule& m, std::size_t depth) {
    auto res = resolution_of(m.side() == Side::Left ? m : m.left_view());
    Json degrees = Json::array();
    Json betti = Json::array();
    const auto len = res->length(depth);
    const std::size_t top = len ? *len : depth;
    for (std::size_t j = 0; j <= top; ++j) {
        const auto& pj = res->projective(j);
        std::vector<std::size_t> counts(res->ring()->basic().num_simples(), 0);
        for (auto s : pj.types) ++counts[s];
        Json d{{"degree", j}, {"dim", pj.dim()}, {"syzygy_dim", res->syzygy(j).dim()}, {"types", pj.types}};
        if (j >= 1) d["differential"] = matrix_to_json(res->differential(j));
        degrees.push_back(std::move(d));
        betti.push_back(counts);
    }
    Json out{{"side", side_name(m.side())},
             {"module_dim", m.dim()},
             {"depth", depth},
             {"degrees", std::move(degrees)},
             {"betti", std::move(betti)}};
    out["length"] = len ? Json(*len) : Json(nullptr);
    if (auto per = detect_periodicity(*res, depth))
        out["periodicity"] = Json{{"offset", per->offset}, {"period", per->period}, {"iso", matrix_to_json(per->iso)}};
    else
        out["periodicity"] = nullptr;
    return out;
}

}  // namespace homct
