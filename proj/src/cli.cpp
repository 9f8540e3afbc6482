#include "rank1kit/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rank1kit/checks.hpp"
#include "rank1kit/io.hpp"
#include "rank1kit/random.hpp"

namespace rank1kit::cli {

using io::InputError;
using io::json;

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::Crossratio, "crossratio"}, {Command::Project, "project"}, {Command::Act, "act"},
    {Command::Lemma1, "lemma1"},         {Command::Lemma2, "lemma2"},   {Command::Vogt, "vogt"},
    {Command::Jacobian, "jacobian"},     {Command::Reconstruct, "reconstruct"}, {Command::Verify, "verify"},
};

Command command_from_name(const std::string& s) {
    for (const auto& [c, name] : kCommands)
        if (s == name) return c;
    throw UsageError("unknown command '" + s + "'");
}

}  // namespace

const char* command_name(Command c) noexcept {
    for (const auto& [k, name] : kCommands)
        if (k == c) return name;
    return "?";
}

std::string usage() {
    return "usage: rank1kit <command> [--input PATH] [--output PATH] [--seed N] [--tol X] [--n N] [--words LIST]\n"
           "commands: crossratio project act lemma1 lemma2 vogt jacobian reconstruct verify\n";
}

JobConfig parse(const std::vector<std::string>& args) {
    CLI::App app{"rank1kit"};
    std::string command;
    std::string input, output;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int n = 0;
    std::string words;
    app.add_option("command", command)->required();
    auto* o_in = app.add_option("--input", input);
    auto* o_out = app.add_option("--output", output);
    app.add_option("--seed", seed);
    auto* o_tol = app.add_option("--tol", tol);
    auto* o_n = app.add_option("--n", n);
    auto* o_words = app.add_option("--words", words);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    JobConfig cfg;
    cfg.command = command_from_name(command);
    if (*o_in) cfg.input = input;
    if (*o_out) cfg.output = output;
    cfg.seed = seed;
    if (*o_tol) {
        if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("--tol must be a positive number");
        cfg.tol = tol;
    }
    if (*o_n) {
        if (n < 1) throw UsageError("--n must be a positive integer");
        cfg.n = n;
    }
    if (*o_words) cfg.words = words;
    return cfg;
}

std::vector<std::string> render(const JobConfig& cfg) {
    std::vector<std::string> a{command_name(cfg.command)};
    if (!cfg.input.empty()) a.insert(a.end(), {"--input", cfg.input});
    if (!cfg.output.empty()) a.insert(a.end(), {"--output", cfg.output});
    if (cfg.seed != 0) a.insert(a.end(), {"--seed", std::to_string(cfg.seed)});
    if (cfg.tol) a.insert(a.end(), {"--tol", io::format_double(*cfg.tol)});
    if (cfg.n) a.insert(a.end(), {"--n", std::to_string(*cfg.n)});
    if (cfg.words) a.insert(a.end(), {"--words", *cfg.words});
    return a;
}

namespace {

struct Allowed {
    bool input_required = false, input = false, tol = false, n = false, words = false;
};

Allowed allowed(Command c) {
    switch (c) {
    case Command::Crossratio:
    case Command::Project:
    case Command::Act:
    case Command::Vogt: return {true, true, false, false, false};
    case Command::Lemma1: return {false, true, false, true, true};
    case Command::Lemma2: return {false, true, false, false, true};
    case Command::Jacobian: return {false, true, true, false, true};
    case Command::Reconstruct: return {false, true, true, false, true};
    case Command::Verify: return {};
    }
    return {};
}

void check_options(const JobConfig& cfg) {
    const Allowed a = allowed(cfg.command);
    const std::string cmd = command_name(cfg.command);
    if (a.input_required && cfg.input.empty()) throw InputError("--input", "required by " + cmd);
    if (!a.input && !cfg.input.empty()) throw InputError("--input", "not used by " + cmd);
    if (!a.tol && cfg.tol) throw InputError("--tol", "not used by " + cmd);
    if (!a.n && cfg.n) throw InputError("--n", "not used by " + cmd);
    if (!a.words && cfg.words) throw InputError("--words", "not used by " + cmd);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("--input", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return io::parse_json_text(read_file(path), "--input"); }

bool is_csv(const std::string& path) { return std::filesystem::path(path).extension() == ".csv"; }

json num(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

// Real values print as plain numbers so identity traces read {"P": 4, ...}.
json scalar(cplx z) { return z.imag() == 0.0 ? json(z.real()) : io::to_json(z); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SL2Rep input_rep_or_random(const JobConfig& cfg, int arity) {
    if (!cfg.input.empty()) return io::rep_from_json(read_json(cfg.input), "");
    auto rng = stream_rng(cfg.seed, 0);
    if (arity == 2) return random_schottky_pair(rng);
    return random_rep(rng, arity);
}

const json& points_field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(name, "missing field");
    if (!j[name].is_array()) throw InputError(name, "expected an array");
    return j[name];
}

std::string do_crossratio(const JobConfig& cfg) {
    const json j = read_json(cfg.input);
    const SpaceConfig space = io::config_from_json(j.is_object() && j.contains("config") ? j["config"] : json(), "config");
    std::string model = "nil";
    if (j.contains("model")) {
        if (!j["model"].is_string()) throw InputError("model", "expected \"nil\" or \"ball\"");
        model = j["model"].get<std::string>();
        if (model != "nil" && model != "ball") throw InputError("model", "expected \"nil\" or \"ball\"");
    }
    const json& pts = points_field(j, "points");
    if (pts.size() != 4) throw InputError("points", "expected 4 points");
    json out{{"model", model}};
    if (model == "nil") {
        std::vector<NilPoint> g;
        for (std::size_t i = 0; i < 4; ++i) g.push_back(io::nilpoint_from_json(pts[i], "points[" + std::to_string(i) + "]", &space));
        double cn = 0.0, cb = 0.0;
        try {
            cn = crossratio_nil(g[0], g[1], g[2], g[3]);
            cb = crossratio_ball(stereo(g[0]), stereo(g[1]), stereo(g[2]), stereo(g[3]));
        } catch (const std::domain_error& e) {
            throw InputError("points", e.what());
        }
        out["nil"] = num(cn);
        out["ball"] = num(cb);
        out["relative_difference"] = std::isfinite(cn) ? num(std::abs(cn - cb) / std::max(std::abs(cn), 1e-300)) : json(nullptr);
    } else {
        std::vector<BallPoint> x;
        for (std::size_t i = 0; i < 4; ++i) x.push_back(io::ballpoint_from_json(pts[i], "points[" + std::to_string(i) + "]", &space));
        try {
            out["ball"] = num(crossratio_ball(x[0], x[1], x[2], x[3]));
        } catch (const std::domain_error& e) {
            throw InputError("points", e.what());
        }
    }
    return dump(out);
}

std::string do_project(const JobConfig& cfg) {
    const json j = read_json(cfg.input);
    const SpaceConfig space = io::config_from_json(j.is_object() && j.contains("config") ? j["config"] : json(), "config");
    json out{{"config", io::to_json(space)}};
    if (j.contains("points")) {
        const json& pts = points_field(j, "points");
        json res = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const NilPoint g = io::nilpoint_from_json(pts[i], "points[" + std::to_string(i) + "]", &space);
            const BallPoint x = stereo(g);
            json r{{"ball", io::to_json(x)}, {"sphere_error", std::abs(x.norm2() - 1.0)}};
            if (!g.is_infinity()) {
                const NilPoint back = stereo_inv(x);
                double e = norm(back.center() - g.center());
                for (std::size_t k = 0; k < g.horizontal().size(); ++k) e = std::max(e, norm(back.horizontal()[k] - g.horizontal()[k]));
                r["roundtrip_error"] = e;
            }
            res.push_back(r);
        }
        out["points"] = res;
    }
    if (j.contains("ball_points")) {
        const json& pts = points_field(j, "ball_points");
        json res = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string path = "ball_points[" + std::to_string(i) + "]";
            const BallPoint x = io::ballpoint_from_json(pts[i], path, &space);
            try {
                res.push_back(io::to_json(stereo_inv(x)));
            } catch (const std::invalid_argument& e) {
                throw InputError(path, e.what());
            }
        }
        out["nil_points"] = res;
    }
    if (!j.contains("points") && !j.contains("ball_points")) throw InputError("points", "missing field");
    return dump(out);
}

std::string do_act(const JobConfig& cfg) {
    const json j = read_json(cfg.input);
    if (!j.is_object() || !j.contains("isometry")) throw InputError("isometry", "missing field");
    const NormalIsometry iso = io::normal_from_json(j["isometry"], "isometry");
    const json& pts = points_field(j, "points");
    json res = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const NilPoint g = io::nilpoint_from_json(pts[i], "points[" + std::to_string(i) + "]", &iso.config);
        const NilPoint h = act_nil(iso, g);
        const BallPoint y = act_ball(iso, stereo(g));
        res.push_back({{"nil", io::to_json(h)}, {"ball", io::to_json(y)}, {"equivariance_error", max_coord_diff(stereo(h), y)}});
    }
    json out{{"points", res}, {"translation_length", std::abs(iso.s)}};
    return dump(out);
}

std::string do_lemma1(const JobConfig& cfg) {
    const SL2Rep rep = input_rep_or_random(cfg, 2);
    Word a{{1}}, b{{2}};
    if (cfg.words) {
        const auto w = io::parse_word_list(*cfg.words);
        if (w.size() != 2) throw InputError("--words", "expected exactly two words a,b");
        a = w[0];
        b = w[1];
    }
    const int n = cfg.n.value_or(24);
    for (const Word* w : {&a, &b}) {
        try {
            validate(*w, rep.arity());
        } catch (const std::invalid_argument& e) {
            throw InputError("--words", e.what());
        }
    }
    FixedPair fa, fb;
    std::vector<double> seq;
    try {
        fa = fixed_points(evaluate(rep, a));
        fb = fixed_points(evaluate(rep, b));
        seq = lemma1_sequence(LengthOracle::from_rep(rep), a, b, n);
    } catch (const NotLoxodromic& e) {
        throw InputError("--words", e.what());
    }
    const double cr = sphere_crossratio(fa.repelling, fb.repelling, fa.attracting, fb.attracting);
    std::string out = "n,seq,cr,rel_error\n";
    for (int k = 1; k <= n; ++k) {
        const double s = seq[static_cast<std::size_t>(k - 1)];
        out += std::to_string(k) + "," + io::format_double(s) + "," + io::format_double(cr) + "," +
               io::format_double(std::abs(s - cr) / cr) + "\n";
    }
    return out;
}

std::string do_lemma2(const JobConfig& cfg) {
    const SL2Rep rep = input_rep_or_random(cfg, 2);
    std::vector<Word> words = cfg.words ? io::parse_word_list(*cfg.words) : cyclic_classes(rep.arity(), 3);
    std::string out = "word,trace_re,trace_im,class,length,gauge,gauge_from_length,rel_error\n";
    for (const auto& w : words) {
        Mat2 m;
        try {
            m = evaluate(rep, w);
        } catch (const std::invalid_argument& e) {
            throw InputError("--words", e.what());
        }
        const cplx tr = m.trace();
        const double l = length_of_trace(tr), g = length_gauge(m);
        const double rhs = 2.0 * (std::exp(l / 2.0) + std::exp(-l / 2.0));
        out += to_letters(w) + "," + io::format_double(tr.real()) + "," + io::format_double(tr.imag()) + "," +
               class_name(classify(m)) + "," + io::format_double(l) + "," + io::format_double(g) + "," +
               io::format_double(rhs) + "," + io::format_double(std::abs(g - rhs) / rhs) + "\n";
    }
    return out;
}

std::string do_vogt(const JobConfig& cfg) {
    const json j = read_json(cfg.input);
    cplx x[3], y12, y13, y23;
    json out;
    if (j.is_object() && j.contains("generators")) {
        const SL2Rep rep = io::rep_from_json(j, "");
        if (rep.arity() < 3) throw InputError("generators", "expected at least 3 generators");
        for (int i = 0; i < 3; ++i) x[i] = trace_word(rep, Word{{i + 1}});
        y12 = trace_word(rep, Word{{1, 2}});
        y13 = trace_word(rep, Word{{1, 3}});
        y23 = trace_word(rep, Word{{2, 3}});
        const cplx z123 = trace_word(rep, Word{{1, 2, 3}}), z213 = trace_word(rep, Word{{2, 1, 3}});
        const VogtResult v = vogt(x[0], x[1], x[2], y12, y13, y23);
        out["z123"] = scalar(z123);
        out["z213"] = scalar(z213);
        out["residual_z123"] = std::abs(z123 * z123 - v.P * z123 + v.Q);
        out["residual_z213"] = std::abs(z213 * z213 - v.P * z213 + v.Q);
    } else {
        const char* names[] = {"x1", "x2", "x3", "y12", "y13", "y23"};
        cplx* slots[] = {&x[0], &x[1], &x[2], &y12, &y13, &y23};
        for (int i = 0; i < 6; ++i) {
            if (!j.is_object() || !j.contains(names[i])) throw InputError(names[i], "missing field");
            *slots[i] = io::complex_from_json(j[names[i]], names[i]);
        }
    }
    const VogtResult v = vogt(x[0], x[1], x[2], y12, y13, y23);
    out["P"] = scalar(v.P);
    out["Q"] = scalar(v.Q);
    out["Delta"] = scalar(v.Delta);
    out["roots"] = json::array({scalar(v.roots[0]), scalar(v.roots[1])});
    return dump(out);
}

std::string do_jacobian(const JobConfig& cfg) {
    const SL2Rep rep = input_rep_or_random(cfg, 3);
    std::vector<Word> words;
    if (cfg.words) {
        words = io::parse_word_list(*cfg.words);
    } else if (rep.arity() >= 3) {
        words = {Word{{1}}, Word{{2}}, Word{{3}}, Word{{1, 2}}, Word{{1, 3}}, Word{{2, 3}}, Word{{1, 2, 3}}};
    } else if (rep.arity() == 2) {
        words = default_length_words();
    } else {
        words = {Word{{1}}};
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        try {
            validate(words[i], rep.arity());
        } catch (const std::invalid_argument& e) {
            throw InputError("--words[" + std::to_string(i) + "]", e.what());
        }
    }
    const double tol = cfg.tol.value_or(1e-8);
    json out;
    json wl = json::array();
    for (const auto& w : words) wl.push_back(to_letters(w));
    out["words"] = wl;
    const auto tj = trace_jacobian(rep, words);
    const auto tf = trace_jacobian(rep, words, Derivative::FiniteDifference);
    const RankReport tr = rank_report(tj.matrix, tol);
    json t = io::to_json(tr);
    t["kernel_dim"] = static_cast<int>(tj.matrix.cols()) - tr.rank;
    double agree = 0.0;
    for (Eigen::Index r = 0; r < tj.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < tj.matrix.cols(); ++c)
            agree = std::max(agree, std::abs(tj.matrix(r, c) - tf.matrix(r, c)) / std::max(1.0, std::abs(tj.matrix(r, c))));
    t["finite_difference_agreement"] = agree;
    out["trace"] = t;
    try {
        const auto lj = length_jacobian(rep, words);
        out["length"] = io::to_json(rank_report(lj.matrix, tol));
    } catch (const NotLoxodromic& e) {
        out["length"] = {{"error", e.what()}};
    }
    return dump(out);
}

std::string do_reconstruct(const JobConfig& cfg) {
    std::optional<LengthOracle> oracle;
    std::optional<SL2Rep> reference;
    if (!cfg.input.empty() && is_csv(cfg.input)) {
        std::ifstream in(cfg.input);
        if (!in) throw InputError("--input", "cannot open '" + cfg.input + "'");
        int arity = 0;
        const auto table = io::read_length_table(in, arity);
        oracle = LengthOracle::from_table(table, std::max(arity, 2));
    } else {
        reference = input_rep_or_random(cfg, 2);
        oracle = LengthOracle::from_rep(*reference);
    }
    ReconstructOptions opt;
    opt.seed = cfg.seed;
    if (cfg.tol) opt.tolerance = *cfg.tol;
    if (cfg.words) opt.words = io::parse_word_list(*cfg.words);
    for (std::size_t i = 0; i < opt.words.size(); ++i) {
        try {
            validate(opt.words[i], oracle->arity());
        } catch (const std::invalid_argument& e) {
            throw InputError("--words[" + std::to_string(i) + "]", e.what());
        }
    }
    const Reconstruction rec = reconstruct(*oracle, opt);
    json out;
    out["generators"] = io::to_json(rec.rep)["generators"];
    out["parameters"] = rec.parameters;
    out["rms"] = rec.rms;
    out["restart"] = rec.restart;
    out["iterations"] = rec.iterations;
    out["lemma1"] = {{"one_minus_p", io::to_json(rec.one_minus_p)}, {"p_modulus", io::to_json(rec.p_modulus)}};
    json words = json::array(), res = json::array();
    for (std::size_t i = 0; i < rec.words.size(); ++i) {
        words.push_back(to_letters(rec.words[i]));
        res.push_back(rec.residuals[i]);
    }
    out["words"] = words;
    out["residuals"] = res;
    if (reference) {
        out["reference_distance"] = conjugacy_distance(rec.rep, *reference);
        double held = 0.0;
        for (const auto& w : cyclic_classes(2, 5)) {
            if (w.size() < 5) continue;
            try {
                const double l = (*oracle)(w);
                held = std::max(held, std::abs(length_of_trace(trace_word(rec.rep, w)) - l) / std::max(1.0, l));
            } catch (const NotLoxodromic&) {
            }
        }
        out["held_out_max_error"] = held;
    }
    return dump(out);
}

std::string do_verify(const JobConfig& cfg, bool& all_passed) {
    const auto results = checks::verify_suite(cfg.seed, Exec::Parallel);
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-44s %8s %11s %8s %-6s %-8s %s\n", "module", "check", "samples", "worst", "tol",
                  "holds", "expected", "status");
    out += line;
    int passed = 0;
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-12s %-44s %8zu %11.3e %8.0e %-6s %-8s %s\n", r.module.c_str(), r.name.c_str(), r.samples,
                      r.value, r.tolerance, r.holds() ? "yes" : "no", r.expect_hold ? "holds" : "fails", r.passed() ? "PASS" : "FAIL");
        out += line;
        passed += r.passed() ? 1 : 0;
    }
    out += "verify: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " checks passed\n";
    all_passed = passed == static_cast<int>(results.size());
    return out;
}

}  // namespace

Result execute(const JobConfig& cfg) {
    Result r;
    try {
        check_options(cfg);
        switch (cfg.command) {
        case Command::Crossratio: r.output = do_crossratio(cfg); break;
        case Command::Project: r.output = do_project(cfg); break;
        case Command::Act: r.output = do_act(cfg); break;
        case Command::Lemma1: r.output = do_lemma1(cfg); break;
        case Command::Lemma2: r.output = do_lemma2(cfg); break;
        case Command::Vogt: r.output = do_vogt(cfg); break;
        case Command::Jacobian: r.output = do_jacobian(cfg); break;
        case Command::Reconstruct: r.output = do_reconstruct(cfg); break;
        case Command::Verify: {
            bool ok = true;
            r.output = do_verify(cfg, ok);
            if (!ok) {
                r.code = kInvalid;
                r.message = "verify: some checks failed";
            }
            break;
        }
        }
    } catch (const ConvergenceError& e) {
        r = {kNoConvergence, "", e.what()};
    } catch (const ElementaryRepresentation& e) {
        r = {kInvalid, "", std::string("input: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        r = {kInvalid, "", e.what()};
    } catch (const std::out_of_range& e) {
        r = {kInvalid, "", e.what()};
    } catch (const std::domain_error& e) {
        r = {kInvalid, "", e.what()};
    }
    return r;
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    const Result r = execute(cfg);
    if (!r.message.empty()) err << "rank1kit " << command_name(cfg.command) << ": " << r.message << "\n";
    const bool write = r.code == kOk || (cfg.command == Command::Verify && !r.output.empty());
    if (!write) return r.code;
    if (cfg.output.empty()) {
        out << r.output;
        return r.code;
    }
    const std::string tmp = cfg.output + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f || !(f << r.output) || !f.flush()) {
            err << "rank1kit: --output: cannot write '" << cfg.output << "'\n";
            std::remove(tmp.c_str());
            return kInvalid;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, cfg.output, ec);
    if (ec) {
        err << "rank1kit: --output: cannot write '" << cfg.output << "'\n";
        std::remove(tmp.c_str());
        return kInvalid;
    }
    return r.code;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        (args.empty() ? std::cerr : std::cout) << usage();
        return args.empty() ? kInvalid : kOk;
    }
    JobConfig cfg;
    try {
        cfg = parse(args);
    } catch (const UsageError& e) {
        std::cerr << "rank1kit: " << e.what() << "\n" << usage();
        return kInvalid;
    }
    return run(cfg, std::cout, std::cerr);
}

}  // namespace rank1kit::cli
