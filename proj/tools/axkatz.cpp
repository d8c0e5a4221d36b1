// Command-line front end. Every report is printed as one JSON object per line
// (or a CSV row / text line with --format). Exit status: 0 when every report
// is verified, 1 when one is not, 2 on malformed input, 3 when a cap is hit.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "axkatz/axkatz.hpp"
#include "axkatz_suite/criteria.hpp"

namespace {

using namespace axkatz;

enum class Format { json, csv, text };

struct Caps {
    std::uint64_t box = std::uint64_t(1) << 24;
    std::uint64_t multiset = 10'000'000;
    std::uint64_t window = 100000;
};

struct RunConfig {
    Format format = Format::json;
    std::uint64_t seed = suite::Config{}.seed;
    Caps caps;
    bool parallel = false;
};

std::uint64_t natural(const std::string& text, const std::string& what) {
    if (text.empty() || text.size() > 18 || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(what + ": expected a natural number, got '" + text + "'");
    return std::stoull(text);
}

std::uint64_t cap_from_env(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    const auto cap = natural(v, name);
    if (cap == 0) throw std::invalid_argument(std::string(name) + " must be positive");
    return cap;
}

LengthSet parse_lengths(const std::string& text) {
    LengthSet X;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        const auto x = natural(item, "X");
        if (x == 0) throw std::invalid_argument("X must contain positive integers only");
        X.insert(x);
    }
    if (X.empty()) throw std::invalid_argument("X must be nonempty");
    return X;
}

Json read_json(const std::string& path_or_inline) {
    if (!path_or_inline.empty() && (path_or_inline.front() == '[' || path_or_inline.front() == '{'))
        return Json::parse(path_or_inline);
    std::ifstream in(path_or_inline);
    if (!in) throw std::invalid_argument("cannot open '" + path_or_inline + "'");
    return Json::parse(in);
}

class Emitter {
   public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    void report(const CongruenceReport& r) { verdict(r.verified, to_json(r)); }
    void report(const InvariantResult& r) { verdict(r.verified, to_json(r)); }
    void verdict(bool ok, Json j) {
        all_verified_ = all_verified_ && ok;
        emit(std::move(j));
    }

    void emit(Json j) {
        j["seed"] = cfg_.seed;
        switch (cfg_.format) {
            case Format::json:
                std::cout << j.dump() << "\n";
                break;
            case Format::csv:
                if (header_.empty()) {
                    for (auto it = j.begin(); it != j.end(); ++it) header_.push_back(it.key());
                    row(header_);
                }
                {
                    std::vector<std::string> cells;
                    for (const auto& k : header_) cells.push_back(j.contains(k) ? cell(j[k]) : "");
                    row(cells);
                }
                break;
            case Format::text: {
                bool first = true;
                for (auto it = j.begin(); it != j.end(); ++it) {
                    std::cout << (first ? "" : " ") << it.key() << "=" << cell(it.value());
                    first = false;
                }
                std::cout << "\n";
                break;
            }
        }
        std::cout.flush();
    }

    bool all_verified() const { return all_verified_; }

   private:
    static std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    static void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& c = cells[i];
            if (i) std::cout << ",";
            if (c.find_first_of(",\"\n") == std::string::npos) {
                std::cout << c;
            } else {
                std::cout << '"';
                for (char ch : c) std::cout << (ch == '"' ? "\"\"" : std::string(1, ch));
                std::cout << '"';
            }
        }
        std::cout << "\n";
    }

    const RunConfig& cfg_;
    std::vector<std::string> header_;
    bool all_verified_ = true;
};

// ---------------------------------------------------------------------------
// verify-axkatz spec files

BigInt json_integer(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return BigInt(v.get<long long>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        const auto digits = s.substr(!s.empty() && s[0] == '-' ? 1 : 0);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) return BigInt(s);
    }
    throw std::invalid_argument(what + ": expected an integer");
}

ResidueSystem explicit_system(std::uint64_t p, const Json& elems) {
    if (!elems.is_array()) throw std::invalid_argument("box factor must be an array of integers");
    std::vector<BigInt> v;
    BigInt top = 0;
    for (const auto& x : elems) {
        v.push_back(json_integer(x, "box element"));
        top = std::max(top, v.back());
    }
    unsigned level = 1;
    while (ipow(p, level) <= top) ++level;
    return ResidueSystem(p, level, std::move(v));
}

AxKatzInstance instance_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
    for (const char* key : {"p", "polys"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("instance needs '") + key + "'");
    const auto p = static_cast<std::uint64_t>(json_integer(j["p"], "p"));
    require_prime(p);
    if (!j["polys"].is_array() || j["polys"].empty()) throw std::invalid_argument("polys must be a nonempty array");

    std::optional<std::size_t> n;
    if (j.contains("n")) n = static_cast<std::size_t>(json_integer(j["n"], "n"));
    std::vector<MultiPoly> polys;
    for (const auto& f : j["polys"]) {
        if (!f.is_string()) throw std::invalid_argument("polys must be strings");
        polys.push_back(parse_multipoly(f.get<std::string>(), n));
    }
    if (!n) {
        std::size_t widest = 1;
        for (const auto& f : polys) widest = std::max(widest, f.n_vars());
        n = widest;
        for (auto& f : polys) f = f.widened(*n);
    }

    const std::size_t s = polys.size();
    std::vector<unsigned> levels(s, 1);
    if (j.contains("levels")) {
        if (!j["levels"].is_array() || j["levels"].size() != s)
            throw std::invalid_argument("levels must be an array with one entry per polynomial");
        for (std::size_t i = 0; i < s; ++i) levels[i] = static_cast<unsigned>(json_integer(j["levels"][i], "level"));
    }
    std::vector<IntValuedPoly> weights(s, IntValuedPoly::constant(1));
    if (j.contains("weights")) {
        if (!j["weights"].is_array() || j["weights"].size() != s)
            throw std::invalid_argument("weights must be an array with one entry per polynomial");
        for (std::size_t i = 0; i < s; ++i) {
            if (!j["weights"][i].is_string()) throw std::invalid_argument("weights must be strings");
            weights[i] = parse_int_valued(j["weights"][i].get<std::string>());
        }
    }

    const Json box = j.contains("box") ? j["box"] : Json("standard");
    std::vector<ResidueSystem> systems;
    if (box.is_string() && box.get<std::string>() == "standard") {
        systems.assign(*n, ResidueSystem::standard(p));
    } else if (box.is_object() && box.contains("unit_level")) {
        const auto L = static_cast<unsigned>(json_integer(box["unit_level"], "unit_level"));
        systems.assign(*n, build_unit_system(p, L));
    } else if (box.is_array()) {
        if (box.size() != *n) throw std::invalid_argument("box needs one residue system per variable");
        for (const auto& f : box) systems.push_back(explicit_system(p, f));
    } else {
        throw std::invalid_argument("box must be \"standard\", {\"unit_level\": L} or an array of systems");
    }
    AxKatzInstance inst{p, std::move(polys), std::move(levels), std::move(weights), Box(p, std::move(systems))};
    inst.validate();
    return inst;
}

// ---------------------------------------------------------------------------

CongruenceReport unit_residues_report(std::uint64_t p, unsigned m) {
    const auto sys = build_unit_system(p, m);
    CongruenceReport rep;
    rep.claim = "unit-residues";
    Json elems = Json::array();
    for (const auto& x : sys.elements()) elems.push_back(to_json(x));
    rep.parameters = {{"p", p}, {"m", m}, {"system", elems}};
    rep.predicted_valuation = m;
    const auto f = IntegerPoly::power_minus(static_cast<unsigned>(p - 1), 1);
    for (const auto& x : sys.elements()) {
        if (x == 0) continue;
        const auto v = Valuation::of(f(x), p);
        if (!v.is_infinite() && (rep.achieved.is_infinite() || v.value() < rep.achieved.value())) rep.achieved = v;
    }
    rep.verified = validate_system(sys.elements(), p) && rep.achieved.at_least(m);
    if (!rep.verified) rep.witness = elems;
    return rep;
}

Json bounds_report(const AbelianPGroup& g, const LengthSet& X, unsigned m) {
    const auto b = thm17_bound(g, X, m);
    const auto kr = thm18_19_krange(g);
    Json j;
    j["group"] = g.spec();
    j["X"] = to_json(X);
    j["m"] = m;
    j["applicable"] = b.applicable;
    j["d"] = b.d;
    j["r"] = b.r;
    j["det_product"] = to_json(b.det.product);
    j["det_ok"] = b.det.ok;
    j["bound1"] = b.applicable ? Json(b.bound1.str()) : Json(nullptr);
    j["bound1_floor"] = b.applicable ? to_json(b.bound1_floor) : Json(nullptr);
    j["bound2"] = b.applicable ? to_json(b.bound2) : Json(nullptr);
    j["skq_min_k"] = kr.min_k() ? Json(*kr.min_k()) : Json(nullptr);
    return j;
}

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions o;
    o.cap = cfg.caps.multiset;
    o.parallel = cfg.parallel;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of Chevalley-Warning type congruences and zero-sum invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string format = "json";
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_flag("--parallel", cfg.parallel, "Run independent pieces on several threads");

    std::uint64_t p = 0, n = 0, r = 0, k = 0;
    unsigned s = 1, m = 1, t = 1;
    std::optional<std::uint64_t> r_opt, indicator, alpha_opt;
    std::string w = "1", values, spec, group, seq, xs, suite_name = "all";
    bool no_bounds = false, corrupt = false;

    auto* residues = app.add_subcommand("residues", "Unit residue system lifted to level m");
    residues->add_option("--p", p)->required();
    residues->add_option("--m", m)->required();

    auto* wf = app.add_subcommand("weisman-fleck", "Weighted alternating binomial sums over a residue class");
    wf->add_option("--n", n)->required();
    wf->add_option("--p", p)->required();
    wf->add_option("--s", s)->required();
    wf->add_option("--r", r_opt, "Residue; every residue when omitted");
    wf->add_option("--w", w, "Integer-valued weight, e.g. \"1/2*x^2 - 1/2*x\"");

    auto* wilson = app.add_subcommand("wilson", "Wilson approximation of a weighted periodic function");
    wilson->add_option("--p", p)->required();
    wilson->add_option("--s", s)->required();
    wilson->add_option("--m", m)->required();
    wilson->add_option("--w", w);
    auto* ind_opt = wilson->add_option("--indicator", indicator, "Indicator of the residue class r mod p^s");
    auto* val_opt = wilson->add_option("--table", values, "Comma-separated values on one period");
    ind_opt->excludes(val_opt);

    auto* axk = app.add_subcommand("verify-axkatz", "Weighted zero count of a polynomial system over a box");
    axk->add_option("--spec", spec, "JSON instance file, or an array of instances")->required();

    auto* alt = app.add_subcommand("altsum", "Alternating zero-sum subsequence counts");
    alt->add_option("--group", group)->required();
    alt->add_option("--seq", seq, "JSON sequence file or inline JSON")->required();
    alt->add_option("--m", m)->required();
    alt->add_option("--alpha", alpha_opt);
    alt->add_option("--t", t);

    auto* dav = app.add_subcommand("davenport", "Davenport constant by exhaustive search");
    dav->add_option("--group", group)->required();
    dav->add_flag("--no-bounds", no_bounds, "Search to the pigeonhole depth");

    auto* egz = app.add_subcommand("egz", "s_X(G) by exhaustive search; X defaults to {exp(G)}");
    egz->add_option("--group", group)->required();
    egz->add_option("--X", xs, "Comma-separated lengths");
    egz->add_flag("--no-bounds", no_bounds);

    auto* skq = app.add_subcommand("skq", "s_{k exp(G)}(G) by exhaustive search");
    skq->add_option("--group", group)->required();
    skq->add_option("--k", k)->required();
    skq->add_flag("--no-bounds", no_bounds);

    auto* bounds = app.add_subcommand("bounds", "Upper bounds for s_{X q}(G)");
    bounds->add_option("--group", group)->required();
    bounds->add_option("--X", xs)->required();
    bounds->add_option("--m", m)->required();

    auto* suite_cmd = app.add_subcommand("suite", "Acceptance criteria");
    suite_cmd->add_option("name", suite_name)->check(CLI::IsMember({"algebra", "combinatorics", "all"}));
    suite_cmd->add_option("--seed", cfg.seed);
    suite_cmd->add_flag("--corrupt-expected", corrupt)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;

    Emitter out(cfg);
    try {
        cfg.caps.box = cap_from_env("AXKATZ_BOX_CAP", cfg.caps.box);
        cfg.caps.multiset = cap_from_env("AXKATZ_MULTISET_CAP", cfg.caps.multiset);
        cfg.caps.window = cap_from_env("AXKATZ_WINDOW_CAP", cfg.caps.window);
        SearchOptions search = search_options(cfg);
        search.use_bounds = !no_bounds;

        if (residues->parsed()) {
            out.report(unit_residues_report(p, m));
        } else if (wf->parsed()) {
            const auto weight = parse_int_valued(w);
            const BigInt q = ipow(p, s);
            if (r_opt) {
                out.report(weisman_fleck_check(n, *r_opt, p, s, weight));
            } else {
                require_prime(p);
                if (q > BigInt(cfg.caps.box)) throw CapExceeded("too many residues", q, BigInt(cfg.caps.box));
                for (r = 0; BigInt(r) < q; ++r) out.report(weisman_fleck_check(n, r, p, s, weight));
            }
        } else if (wilson->parsed()) {
            require_prime(p);
            const BigInt q = ipow(p, s);
            if (q > BigInt(cfg.caps.window)) throw CapExceeded("period too long", q, BigInt(cfg.caps.window));
            const auto P = static_cast<std::size_t>(q);
            std::vector<BigInt> f;
            if (indicator) {
                if (*indicator >= P) throw std::invalid_argument("indicator residue must lie in [0, p^s - 1]");
                f.assign(P, 0);
                f[*indicator] = 1;
            } else if (!values.empty()) {
                std::stringstream in(values);
                std::string item;
                while (std::getline(in, item, ',')) f.push_back(json_integer(Json(item), "value"));
                if (f.size() != P) throw std::invalid_argument("--table needs exactly p^s entries");
            } else {
                throw std::invalid_argument("wilson needs --indicator or --table");
            }
            out.report(wilson_approx(DiffTable(f, P), parse_int_valued(w), p, m, cfg.caps.window).report);
        } else if (axk->parsed()) {
            const Json doc = read_json(spec);
            std::vector<AxKatzInstance> insts;
            if (doc.is_array())
                for (const auto& item : doc) insts.push_back(instance_from_json(item));
            else
                insts.push_back(instance_from_json(doc));
            CountOptions opts;
            opts.cap = cfg.caps.box;
            opts.parallel = cfg.parallel;
            opts.partitions = cfg.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
            for (const auto& inst : insts) out.report(verify_axkatz(inst, opts));
        } else if (alt->parsed()) {
            const auto g = parse_group(group);
            const auto sq = sequence_from_json(g, read_json(seq));
            if (alpha_opt) {
                for (const auto& rep : check_altsum_q(sq, *alpha_opt, t, m)) out.report(rep);
            } else {
                out.report(check_altsum(sq, m));
            }
        } else if (dav->parsed()) {
            out.report(davenport_exact(parse_group(group), search));
        } else if (egz->parsed()) {
            const auto g = parse_group(group);
            out.report(xs.empty() ? egz_exact(g, search) : s_X_exact(g, parse_lengths(xs), search));
        } else if (skq->parsed()) {
            out.report(skq_exact(parse_group(group), k, search));
        } else if (bounds->parsed()) {
            out.emit(bounds_report(parse_group(group), parse_lengths(xs), m));
        } else if (suite_cmd->parsed()) {
            suite::Config sc;
            sc.seed = cfg.seed;
            sc.corrupt_expected = corrupt;
            suite::run(suite_name, sc, [&](const suite::CriterionResult& res) { out.verdict(res.pass, suite::to_json(res)); });
        }
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return out.all_verified() ? 0 : 1;
}
