#include "genrank/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace genrank {

namespace {

using nlohmann::json;

// nlohmann reports byte offsets; convert for MalformedInput messages.
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte ? e.byte - 1 : 0);
        std::ostringstream os;
        os << "malformed JSON at " << line << ":" << col << ": " << e.what();
        throw MalformedInput(os.str());
    }
}

[[noreturn]] void shape_error(const std::string& what) {
    throw MalformedInput("malformed input: " + what);
}

double finite_number(const json& v, const char* where) {
    if (!v.is_number()) shape_error(std::string(where) + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) shape_error(std::string(where) + " must be finite");
    return d;
}

int positive_int(const json& v, const char* where) {
    if (!v.is_number_integer()) shape_error(std::string(where) + " must be an integer");
    long x = v.get<long>();
    if (x < 1 || x > 1000000) shape_error(std::string(where) + " out of range");
    return static_cast<int>(x);
}

json entry_to_json(const CMat& e) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            double re = e(r, c).real();
            double im = e(r, c).imag();
            if (!std::isfinite(re) || !std::isfinite(im))
                shape_error("entry holds a non-finite value");
            row.push_back(json::array({re, im}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat entry_from_json(const json& v, int n) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        shape_error("entry must be an n x n array of [re, im] cells");
    CMat e(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            shape_error("entry must be an n x n array of [re, im] cells");
        for (int c = 0; c < n; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2)
                shape_error("cell must be a [re, im] pair");
            e(r, c) = std::complex<double>(finite_number(cell[0], "cell"),
                                           finite_number(cell[1], "cell"));
        }
    }
    return e;
}

json tuple_to_value(const HermitianTuple& t) {
    json j;
    j["n"] = t.n;
    j["k"] = t.k();
    json entries = json::array();
    for (const auto& e : t.entries) {
        if (e.rows() != t.n || e.cols() != t.n)
            shape_error("entry size differs from the declared n");
        entries.push_back(entry_to_json(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

HermitianTuple tuple_from_value(const json& j) {
    if (!j.is_object()) shape_error("tuple must be an object");
    if (!j.contains("n") || !j.contains("k") || !j.contains("entries"))
        shape_error("tuple needs n, k and entries");
    HermitianTuple t;
    t.n = positive_int(j["n"], "n");
    int k = positive_int(j["k"], "k");
    const json& entries = j["entries"];
    if (!entries.is_array() || static_cast<int>(entries.size()) != k)
        shape_error("entries must be an array of length k");
    for (int e = 0; e < k; ++e) {
        CMat m = entry_from_json(entries[static_cast<std::size_t>(e)], t.n);
        if (!is_hermitian(m))
            throw NonHermitianInput("tuple entry " + std::to_string(e) +
                                    " is not Hermitian");
        t.entries.push_back(std::move(m));
    }
    return t;
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

}  // namespace

std::string tuple_to_json(const HermitianTuple& t, int indent) {
    return dump(tuple_to_value(t), indent);
}

HermitianTuple tuple_from_json(const std::string& text) {
    return tuple_from_value(parse_or_throw(text));
}

std::string field_to_json(const MatrixField& f, int indent) {
    if (f.points.size() != f.values.size())
        shape_error("field points and values must align");
    json j;
    j["points"] = f.points;
    j["n"] = f.n;
    j["k"] = f.k;
    json values = json::object();
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        if (values.contains(f.points[i])) shape_error("duplicate point label");
        values[f.points[i]] = tuple_to_value(f.values[i]);
    }
    j["values"] = std::move(values);
    return dump(j, indent);
}

MatrixField field_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object()) shape_error("field must be an object");
    if (!j.contains("points") || !j.contains("n") || !j.contains("k") ||
        !j.contains("values"))
        shape_error("field needs points, n, k and values");
    MatrixField f;
    f.n = positive_int(j["n"], "n");
    f.k = positive_int(j["k"], "k");
    const json& points = j["points"];
    const json& values = j["values"];
    if (!points.is_array() || points.empty())
        shape_error("points must be a nonempty array of labels");
    if (!values.is_object()) shape_error("values must be an object keyed by label");
    for (const auto& p : points) {
        if (!p.is_string()) shape_error("point labels must be strings");
        std::string label = p.get<std::string>();
        if (std::find(f.points.begin(), f.points.end(), label) != f.points.end())
            shape_error("duplicate point label '" + label + "'");
        if (!values.contains(label)) shape_error("missing value for point '" + label + "'");
        HermitianTuple t = tuple_from_value(values[label]);
        if (t.n != f.n || t.k() != f.k)
            shape_error("value for point '" + label + "' does not match the field shape");
        f.points.push_back(std::move(label));
        f.values.push_back(std::move(t));
    }
    if (values.size() != f.points.size()) shape_error("values carries extra labels");
    return f;
}

}  // namespace genrank
