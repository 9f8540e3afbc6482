#include "rank1kit/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace rank1kit::io {

InputError::InputError(const std::string& path, const std::string& what)
    : std::invalid_argument(path.empty() ? what : path + ": " + what) {}

namespace {

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& path, const char* k) { return path.empty() ? std::string(k) : path + "." + k; }

const json& field(const json& j, const char* k, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    const auto it = j.find(k);
    if (it == j.end()) throw InputError(key(path, k), "missing field");
    return *it;
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array");
    return j;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw InputError(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(path, "expected a finite number");
    return x;
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path, "expected an integer");
    return j.get<int>();
}

template <class F>
auto rethrow_as_input(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(path, e.what());
    } catch (const std::domain_error& e) {
        throw InputError(path, e.what());
    }
}

json coeffs_json(const Element& a) {
    json c = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) c.push_back(a[i]);
    return c;
}

Element coeffs_from_json(const json& j, Kind kind, const std::string& path) {
    array(j, path);
    if (j.size() != dim(kind))
        throw InputError(path, "expected " + std::to_string(dim(kind)) + " coefficients for kind " +
                                   std::string(kind_name(kind)));
    double c[8] = {};
    for (std::size_t i = 0; i < j.size(); ++i) c[i] = number(j[i], idx(path, i));
    return Element::from_coeffs(kind, c, j.size());
}

SpaceConfig config_or(const json& j, const std::string& path, const SpaceConfig* fallback) {
    if (j.is_object() && j.contains("config")) return config_from_json(j["config"], key(path, "config"));
    if (fallback) return *fallback;
    return config_from_json(field(j, "config", path), key(path, "config"));
}

}  // namespace

json to_json(const Element& a) { return {{"kind", std::string(kind_name(a.kind()))}, {"coeffs", coeffs_json(a)}}; }

json to_json(const SpaceConfig& c) { return {{"kind", std::string(kind_name(c.kind))}, {"m", c.m}}; }

json to_json(const NilPoint& g) {
    json j{{"config", to_json(g.config())}, {"infinity", g.is_infinity()}};
    if (g.is_infinity()) return j;
    j["center"] = coeffs_json(g.center());
    json h = json::array();
    for (const auto& k : g.horizontal()) h.push_back(coeffs_json(k));
    j["horizontal"] = h;
    return j;
}

json to_json(const BallPoint& x) {
    json w1 = json::array();
    for (const auto& e : x.w1()) w1.push_back(coeffs_json(e));
    return {{"config", to_json(x.config())}, {"w1", w1}, {"w2", coeffs_json(x.w2())}};
}

json to_json(const NormalIsometry& iso) {
    json m = json::array();
    for (int i = 0; i < iso.M.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < iso.M.cols(); ++k) row.push_back(coeffs_json(iso.M(i, k)));
        m.push_back(row);
    }
    return {{"config", to_json(iso.config)}, {"M", m}, {"nu", coeffs_json(iso.nu)}, {"s", iso.s}};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Mat2& m) {
    return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}), json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

json to_json(const SL2Rep& rep) {
    json g = json::array();
    for (const auto& x : rep.generators) g.push_back(to_json(x.matrix()));
    return {{"generators", g}};
}

json to_json(const Word& w) { return w.letters; }

json to_json(const RankReport& r) {
    return {{"singular_values", r.singular_values}, {"rank", r.rank}, {"tolerance", r.tolerance}};
}

json to_json(const Estimate& e) {
    json j{{"value", e.value}};
    if (std::isfinite(e.confidence))
        j["confidence"] = e.confidence;
    else
        j["confidence"] = nullptr;
    return j;
}

Element element_from_json(const json& j, const std::string& path) {
    const json& k = field(j, "kind", path);
    if (!k.is_string()) throw InputError(key(path, "kind"), "expected one of \"R\", \"C\", \"H\", \"O\"");
    const Kind kind = rethrow_as_input(key(path, "kind"), [&] { return kind_from_name(k.get<std::string>()); });
    return coeffs_from_json(field(j, "coeffs", path), kind, key(path, "coeffs"));
}

SpaceConfig config_from_json(const json& j, const std::string& path) {
    const json& k = field(j, "kind", path);
    if (!k.is_string()) throw InputError(key(path, "kind"), "expected one of \"R\", \"C\", \"H\", \"O\"");
    const Kind kind = rethrow_as_input(key(path, "kind"), [&] { return kind_from_name(k.get<std::string>()); });
    const int m = integer(field(j, "m", path), key(path, "m"));
    return rethrow_as_input(key(path, "m"), [&] { return SpaceConfig(kind, m); });
}

NilPoint nilpoint_from_json(const json& j, const std::string& path, const SpaceConfig* fallback) {
    const SpaceConfig cfg = config_or(j, path, fallback);
    if (j.contains("infinity")) {
        if (!j["infinity"].is_boolean()) throw InputError(key(path, "infinity"), "expected a boolean");
        if (j["infinity"].get<bool>()) return NilPoint::infinity(cfg);
    }
    const Element c = coeffs_from_json(field(j, "center", path), cfg.kind, key(path, "center"));
    const json& h = array(field(j, "horizontal", path), key(path, "horizontal"));
    std::vector<Element> k;
    for (std::size_t i = 0; i < h.size(); ++i) k.push_back(coeffs_from_json(h[i], cfg.kind, idx(key(path, "horizontal"), i)));
    return rethrow_as_input(path, [&] { return NilPoint(cfg, c, std::move(k)); });
}

BallPoint ballpoint_from_json(const json& j, const std::string& path, const SpaceConfig* fallback) {
    const SpaceConfig cfg = config_or(j, path, fallback);
    const json& h = array(field(j, "w1", path), key(path, "w1"));
    std::vector<Element> w1;
    for (std::size_t i = 0; i < h.size(); ++i) w1.push_back(coeffs_from_json(h[i], cfg.kind, idx(key(path, "w1"), i)));
    const Element w2 = coeffs_from_json(field(j, "w2", path), cfg.kind, key(path, "w2"));
    return rethrow_as_input(path, [&] { return BallPoint(cfg, std::move(w1), w2); });
}

NormalIsometry normal_from_json(const json& j, const std::string& path) {
    const SpaceConfig cfg = config_from_json(field(j, "config", path), key(path, "config"));
    const json& m = array(field(j, "M", path), key(path, "M"));
    const int n = static_cast<int>(m.size());
    FMatrix M(cfg.kind, n, n);
    for (int i = 0; i < n; ++i) {
        const std::string rp = idx(key(path, "M"), static_cast<std::size_t>(i));
        const json& row = array(m[static_cast<std::size_t>(i)], rp);
        if (static_cast<int>(row.size()) != n) throw InputError(rp, "expected " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) M(i, k) = coeffs_from_json(row[static_cast<std::size_t>(k)], cfg.kind, idx(rp, static_cast<std::size_t>(k)));
    }
    const Element nu = coeffs_from_json(field(j, "nu", path), cfg.kind, key(path, "nu"));
    const double s = number(field(j, "s", path), key(path, "s"));
    return rethrow_as_input(path, [&] { return NormalIsometry(cfg, M, nu, s); });
}

cplx complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return number(j, path);
    if (!j.is_array() || j.size() != 2) throw InputError(path, "expected a complex number [re, im]");
    return {number(j[0], idx(path, 0)), number(j[1], idx(path, 1))};
}

SL2 sl2_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw InputError(path, "expected a 2x2 matrix [[a, b], [c, d]]");
    Mat2 m;
    for (std::size_t r = 0; r < 2; ++r) {
        const std::string rp = idx(path, r);
        if (!j[r].is_array() || j[r].size() != 2) throw InputError(rp, "expected a row of 2 complex numbers");
        for (std::size_t c = 0; c < 2; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c], idx(rp, c));
    }
    return rethrow_as_input(path, [&] { return SL2(m); });
}

SL2Rep rep_from_json(const json& j, const std::string& path) {
    const std::string gp = key(path, "generators");
    const json& g = array(field(j, "generators", path), gp);
    if (g.empty()) throw InputError(gp, "expected at least one generator");
    SL2Rep rep;
    for (std::size_t i = 0; i < g.size(); ++i) rep.generators.push_back(sl2_from_json(g[i], idx(gp, i)));
    return rep;
}

Word word_from_json(const json& j, const std::string& path) {
    if (j.is_string()) return rethrow_as_input(path, [&] { return from_letters(j.get<std::string>()); });
    array(j, path);
    Word w;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const int x = integer(j[i], idx(path, i));
        if (x == 0) throw InputError(idx(path, i), "generator index 0 is not allowed");
        w.letters.push_back(x);
    }
    return w;
}

std::vector<Word> parse_word_list(const std::string& s) {
    std::vector<Word> out;
    std::stringstream ss(s);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InputError(idx("--words", i), "empty word");
        const std::string t = item.substr(b, e - b + 1);
        out.push_back(rethrow_as_input(idx("--words", i), [&] { return from_letters(t); }));
        ++i;
    }
    if (out.empty()) throw InputError("--words", "expected at least one word");
    return out;
}

std::map<Word, double> read_length_table(std::istream& in, int& arity) {
    std::map<Word, double> table;
    std::string line;
    std::size_t lineno = 0;
    arity = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (!header) {
            if (line != "word,length") throw InputError(where, "expected header \"word,length\"");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InputError(where, "expected \"word,length\"");
        const std::string ws = line.substr(0, comma), ls = line.substr(comma + 1);
        const Word w = rethrow_as_input(where + " word", [&] { return from_letters(ws); });
        double l = 0.0;
        const auto [p, ec] = std::from_chars(ls.data(), ls.data() + ls.size(), l);
        if (ec != std::errc() || p != ls.data() + ls.size() || !std::isfinite(l) || l < 0.0)
            throw InputError(where + " length", "expected a finite nonnegative number");
        for (int x : w.letters) arity = std::max(arity, std::abs(x));
        table[w] = l;
    }
    if (!header) throw InputError("line 1", "expected header \"word,length\"");
    if (table.empty()) throw InputError("table", "no rows");
    return table;
}

std::string format_double(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc() ? p : buf);
}

std::string write_length_table(const std::vector<Word>& words, const std::vector<double>& lengths) {
    std::string out = "word,length\n";
    for (std::size_t i = 0; i < words.size(); ++i) out += to_letters(words[i]) + "," + format_double(lengths[i]) + "\n";
    return out;
}

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace rank1kit::io
