#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "cohom.hpp"
#include "derived.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "hash.hpp"
#include "stablecmp.hpp"

namespace homct {

namespace {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Validation: return "Validation";
        case ErrorCode::Schema: return "Schema";
        case ErrorCode::NotSubmoduleCompatible: return "NotSubmoduleCompatible";
        case ErrorCode::NotActionStable: return "NotActionStable";
        case ErrorCode::UnsupportedAlgebra: return "UnsupportedAlgebra";
        case ErrorCode::RadicalFailed: return "RadicalFailed";
        case ErrorCode::NotAGroup: return "NotAGroup";
        case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
        case ErrorCode::NoCertificate: return "NoCertificate";
        case ErrorCode::WindowExhausted: return "WindowExhausted";
        case ErrorCode::NotStableCycle: return "NotStableCycle";
        case ErrorCode::LiftFailed: return "LiftFailed";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::Inconclusive: return "Inconclusive";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

// Runs body(0..n-1) on worker_threads() threads; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t threads = std::min(worker_threads(), n);
    if (threads <= 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next.fetch_add(1)) < n;) {
                try {
                    body(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace

AlgebraPtr resolve_algebra(const std::string& spec) {
    if (std::filesystem::exists(spec)) return parse_algebra_file(spec);
    std::string s = spec;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "a1" || s == "a2" || s == "a3" || s == "a4") return algebra_by_name(s);
    fail(ErrorCode::Io, "algebra not found: " + spec);
}

FdModule on_side(const FdModule& m, Side side) {
    if (m.side() == side) return m;
    require(m.algebra()->is_commutative(), ErrorCode::InvalidArgument,
            std::string("module must be a ") + side_name(side) + " module");
    return FdModule(m.algebra(), side, m.actions(), true);
}

FdModule resolve_module(const std::string& spec, const AlgebraPtr& a, Side side) {
    if (std::filesystem::exists(spec)) {
        FdModule m = parse_module_file(spec);
        require(m.algebra()->same_as(*a), ErrorCode::InvalidArgument, "module " + spec + " is over a different algebra");
        return on_side(m, side);
    }
    if (spec == "k") return trivial_module(a, side);
    if (spec == "R") return regular_module(a, side);
    if (spec == "DR") return dual(regular_module(a, flip(side)));
    if (spec.rfind("R/(", 0) == 0 && spec.back() == ')') {
        std::vector<Vector> rel;
        std::stringstream ss(spec.substr(3, spec.size() - 4));
        for (std::string g; std::getline(ss, g, ',');) rel.push_back(element(a, g));
        return cyclic_quotient(a, rel, side);
    }
    fail(ErrorCode::Io, "module not found: " + spec);
}

namespace {

Json input_entry(const std::string& source, const Json& canonical) {
    return Json{{"source", source}, {"sha256", sha256_hex(canonical.dump())}};
}

// Collects findings of one computation; joined in order after a parallel run.
struct Findings {
    std::vector<std::string> violations, certification;
};

void record_error(const Error& e, const std::string& where, Findings& f) {
    const std::string msg = where + ": " + error_code_name(e.code()) + ": " + e.what();
    if (e.code() == ErrorCode::InternalMismatch)
        f.violations.push_back(msg);
    else
        f.certification.push_back(msg);
}

struct Context {
    AlgebraPtr a;
    FdModule m, n;
    ComputeRequest req;
    CompletePtr tate;
    std::string tate_reason;
    std::optional<CopureCertificate> cert;
};

std::string agreement(bool comparable, bool equal) { return !comparable ? "n/a" : equal ? "agree" : "disagree"; }

Json compute_degree(const Context& c, long i, Findings& f) {
    Json out{{"degree", i}};
    const auto& r = c.req;
    const std::string at = "degree " + std::to_string(i);
    const bool want_complete = r.theory == Theory::Complete || r.theory == Theory::Compare;
    const bool want_stable = r.theory == Theory::Stable || r.theory == Theory::Compare;
    const bool want_tate = r.theory == Theory::Tate || r.theory == Theory::Compare;
    if (r.theory == Theory::Tor) out["dim"] = i < 0 ? 0 : tor(c.m, c.n, i).dim();
    if (r.theory == Theory::Ext) out["dim"] = i < 0 ? 0 : ext(c.m, c.n, i).dim();

    std::optional<StabilizationReport> complete, stable;
    std::optional<std::size_t> tate_dim;
    if (want_complete) {
        try {
            complete = complete_homology(c.m, c.n, i, r.depth, r.window);
            out["complete"] = stabilization_to_json(*complete);
        } catch (const Error& e) {
            record_error(e, at + " complete", f);
            out["complete"] = Json{{"error", e.what()}};
        }
    }
    if (want_stable) {
        try {
            stable = stable_homology_via_duality(c.m, c.n, i, r.depth, r.window);
            Json s = stabilization_to_json(*stable);
            if (c.cert) {
                const std::size_t v = stable_homology_via_vanishing(c.m, c.n, i, c.cert).dim();
                s["vanishing_route_dim"] = v;
                if (stable->verdict == Verdict::Stabilized && stable->limit_dim != v)
                    f.violations.push_back(at + ": stable routes disagree");
            }
            out["stable"] = std::move(s);
        } catch (const Error& e) {
            record_error(e, at + " stable", f);
            out["stable"] = Json{{"error", e.what()}};
        }
    }
    if (want_tate) {
        if (c.tate) {
            tate_dim = tate_tor(c.tate, c.n, i).dim();
            out["tate"] = Json{{"dim", *tate_dim}};
        } else {
            out["tate"] = Json{{"certified", false}};
        }
    }
    if (r.theory == Theory::Compare) {
        auto stab = [](const std::optional<StabilizationReport>& s) {
            return s && s->verdict == Verdict::Stabilized;
        };
        const bool cs_cmp = complete && stable;
        const bool cs_eq = cs_cmp && complete->dims == stable->dims &&
                           (!stab(complete) || !stab(stable) || complete->limit_dim == stable->limit_dim);
        const bool ct_cmp = stab(complete) && tate_dim, st_cmp = stab(stable) && tate_dim;
        Json agree{{"complete_vs_stable", agreement(cs_cmp, cs_eq)},
                   {"complete_vs_tate", agreement(ct_cmp, ct_cmp && complete->limit_dim == *tate_dim)},
                   {"stable_vs_tate", agreement(st_cmp, st_cmp && stable->limit_dim == *tate_dim)}};
        try {
            auto b = duality_bridge_check(c.m, dual(c.n), i, std::min<std::size_t>(r.depth, 3));
            agree["bridge"] = Json{{"pass", b.pass}, {"tor_dims", b.tor_dims}, {"ext_dims", b.ext_dims}};
            if (!b.pass) f.violations.push_back(at + ": duality bridge fails");
        } catch (const Error& e) {
            record_error(e, at + " bridge", f);
        }
        for (const char* key : {"complete_vs_stable", "complete_vs_tate", "stable_vs_tate"})
            if (agree[key] == "disagree") f.violations.push_back(at + ": " + key + " disagree");
        out["agreement"] = std::move(agree);
    }
    return out;
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* theory_name(Theory t) {
    switch (t) {
        case Theory::Tor: return "tor";
        case Theory::Ext: return "ext";
        case Theory::Tate: return "tate";
        case Theory::Stable: return "stable";
        case Theory::Complete: return "complete";
        case Theory::Compare: return "compare";
    }
    return "compare";
}

Theory parse_theory(const std::string& s) {
    for (Theory t : {Theory::Tor, Theory::Ext, Theory::Tate, Theory::Stable, Theory::Complete, Theory::Compare})
        if (s == theory_name(t)) return t;
    fail(ErrorCode::InvalidArgument, "unknown theory: " + s);
}

void validate_request(const ComputeRequest& req) {
    require(req.lo <= req.hi, ErrorCode::InvalidArgument, "degree range is empty");
    require(req.hi - req.lo <= 64, ErrorCode::InvalidArgument, "degree range longer than 65 degrees");
    require(req.window >= 1, ErrorCode::InvalidArgument, "window must be at least 1");
    require(req.depth >= req.window, ErrorCode::InvalidArgument, "depth must be at least the window");
    require(req.depth <= 32, ErrorCode::InvalidArgument, "depth above 32");
}

Json request_to_json(const ComputeRequest& req) {
    return Json{{"algebra", req.algebra}, {"module_m", req.module_m}, {"module_n", req.module_n},
                {"theory", theory_name(req.theory)}, {"degrees", {req.lo, req.hi}}, {"depth", req.depth},
                {"window", req.window}, {"seed", req.seed}};
}

ComputeRequest request_from_json(const Json& j) {
    ComputeRequest r;
    try {
        r.algebra = j.at("algebra").get<std::string>();
        r.module_m = j.at("module_m").get<std::string>();
        r.module_n = j.at("module_n").get<std::string>();
        r.theory = parse_theory(j.value("theory", std::string("compare")));
        const auto& d = j.at("degrees");
        r.lo = d.at(0).get<long>();
        r.hi = d.at(1).get<long>();
        r.depth = j.value("depth", r.depth);
        r.window = j.value("window", r.window);
        r.seed = j.value("seed", r.seed);
    } catch (const Json::exception& e) {
        fail(ErrorCode::Schema, std::string("schema error in request: ") + e.what());
    }
    return r;
}

std::size_t worker_threads() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HOMCT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
    }
    return hw;
}

std::string report_hash(const Json& report) {
    Json copy = report;
    copy.erase("timing");
    copy.erase("report_hash");
    return sha256_hex(copy.dump());
}

void seal_report(Json& report) { report["report_hash"] = report_hash(report); }

RunResult run_compute(const ComputeRequest& req) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_request(req);
    Context c;
    c.req = req;
    c.a = resolve_algebra(req.algebra);
    const bool ext_side = req.theory == Theory::Ext;
    c.m = resolve_module(req.module_m, c.a, ext_side ? Side::Left : Side::Right);
    c.n = resolve_module(req.module_n, c.a, Side::Left);

    Json report{{"tool", kToolVersion}, {"kind", "compute"}, {"request", request_to_json(req)}};
    report["inputs"] = Json{
        {"algebra", input_entry(req.algebra, algebra_to_json(*c.a))},
        {"module_m", input_entry(req.module_m, module_to_json(c.m, ""))},
        {"module_n", input_entry(req.module_n, module_to_json(c.n, ""))},
    };
    report["inputs"]["algebra"]["p"] = c.a->p();
    report["inputs"]["algebra"]["dim"] = c.a->dim();
    report["inputs"]["module_m"]["dim"] = c.m.dim();
    report["inputs"]["module_m"]["side"] = side_name(c.m.side());
    report["inputs"]["module_n"]["dim"] = c.n.dim();
    report["inputs"]["module_n"]["side"] = side_name(c.n.side());

    Findings top;
    if (req.theory == Theory::Tate || req.theory == Theory::Compare) {
        auto cr = complete_resolution(c.m, std::max<std::size_t>(req.depth, 6));
        c.tate = cr.t;
        c.tate_reason = cr.reason;
        Json t{{"certified", cr.t != nullptr}};
        if (cr.t)
            t["method"] = cr.t->method() == CompleteMethod::Splice ? "splice" : "periodic";
        else
            t["reason"] = cr.reason;
        report["tate"] = std::move(t);
        if (!cr.t) top.certification.push_back("tate: " + cr.reason);
    }
    if (req.theory == Theory::Stable || req.theory == Theory::Compare)
        c.cert = copure_vanishing_certificate(c.m, req.depth + 2);

    const std::size_t count = static_cast<std::size_t>(req.hi - req.lo + 1);
    std::vector<Json> rows(count);
    std::vector<Findings> found(count);
    parallel_for(count, [&](std::size_t k) {
        const long i = req.lo + static_cast<long>(k);
        try {
            rows[k] = compute_degree(c, i, found[k]);
        } catch (const Error& e) {
            record_error(e, "degree " + std::to_string(i), found[k]);
            rows[k] = Json{{"degree", i}, {"error", e.what()}};
        }
    });
    Json results = Json::array();
    for (auto& r : rows) results.push_back(std::move(r));
    for (auto& f : found) {
        top.violations.insert(top.violations.end(), f.violations.begin(), f.violations.end());
        top.certification.insert(top.certification.end(), f.certification.begin(), f.certification.end());
    }
    report["results"] = std::move(results);
    if (req.theory == Theory::Compare) {
        bool all = true;
        for (const auto& r : report["results"]) {
            if (!r.contains("agreement")) {
                all = false;
                continue;
            }
            for (const auto& [key, val] : r["agreement"].items())
                if (val.is_string() && val != "agree") all = false;
        }
        report["all_agree"] = all;
    }
    report["violations"] = top.violations;
    report["certification_failures"] = top.certification;
    const bool ok = top.violations.empty();
    report["ok"] = ok;
    report["timing"] = Json{{"total_ms", elapsed_ms(t0)}};
    seal_report(report);
    return {std::move(report), ok};
}

Json run_dump_resolution(const std::string& algebra, const std::string& module, Side side, std::size_t depth) {
    require(depth >= 1 && depth <= 32, ErrorCode::InvalidArgument, "depth must be in [1, 32]");
    AlgebraPtr a = resolve_algebra(algebra);
    FdModule m = resolve_module(module, a, side);
    Json report{{"tool", kToolVersion},
                {"kind", "resolution"},
                {"input", input_entry(module, module_to_json(m, ""))},
                {"resolution", resolution_dump(m, depth)}};
    report["input"]["algebra_sha256"] = sha256_hex(algebra_to_json(*a).dump());
    seal_report(report);
    return report;
}

Json corpus_request_to_json(const CorpusRequest& req) {
    return Json{{"seed", req.seed}, {"count", req.count}, {"max_dim", req.max_dim}, {"algebras", req.algebras}};
}

CorpusRequest corpus_request_from_json(const Json& j) {
    CorpusRequest r;
    try {
        r.seed = j.value("seed", r.seed);
        r.count = j.value("count", r.count);
        r.max_dim = j.value("max_dim", r.max_dim);
        if (j.contains("algebras")) r.algebras = j.at("algebras").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
        fail(ErrorCode::Schema, std::string("schema error in corpus request: ") + e.what());
    }
    require(r.count >= 1 && r.count <= 64, ErrorCode::InvalidArgument, "corpus count must be in [1, 64]");
    require(r.max_dim >= 1 && r.max_dim <= 16, ErrorCode::InvalidArgument, "corpus max_dim must be in [1, 16]");
    return r;
}

namespace {

struct Suite {
    std::string name;
    std::size_t checked = 0, failed = 0, inconclusive = 0;
    std::vector<std::string> failures;
    std::vector<std::string> mismatches;

    // Runs one check; a false result is a finding, InternalMismatch a mismatch,
    // other errors leave the check inconclusive.
    void run(const std::string& label, const std::function<std::optional<bool>()>& check) {
        try {
            auto r = check();
            if (!r) {
                ++inconclusive;
                return;
            }
            ++checked;
            if (!*r) {
                ++failed;
                failures.push_back(label);
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InternalMismatch) {
                ++checked;
                ++failed;
                mismatches.push_back(label + ": " + e.what());
            } else {
                ++inconclusive;
            }
        }
    }

    Json to_json() const {
        return Json{{"suite", name},       {"checked", checked},   {"failed", failed},
                    {"inconclusive", inconclusive}, {"failures", failures}, {"mismatches", mismatches}};
    }
};

struct CorpusData {
    AlgebraPtr a;
    std::vector<CorpusEntry> left, right;
    bool self_injective = false;
    bool big = false;  // fast-growing resolutions: shallower checks
};

std::string pair_label(const CorpusEntry& m, const CorpusEntry& n, long i) {
    return m.name + " | " + n.name + " | i=" + std::to_string(i);
}

Suite run_suite(const std::string& name, const CorpusData& d) {
    Suite s;
    s.name = name;
    const FdModule kr = trivial_module(d.a, Side::Right), kl = trivial_module(d.a, Side::Left);
    const std::size_t depth = d.big ? 2 : 3, w = 2;
    const std::size_t few = std::min<std::size_t>(3, d.left.size());
    auto stab_zero = [](const StabilizationReport& r) -> std::optional<bool> {
        if (r.verdict == Verdict::Inconclusive) return std::nullopt;
        return r.verdict == Verdict::Stabilized && r.limit_dim == 0;
    };
    if (name == "unit_laws") {
        const FdModule rr = regular_module(d.a, Side::Right), rl = regular_module(d.a, Side::Left);
        for (const auto& n : d.left) {
            s.run(n.name + " Tor_0(R,n)", [&] { return tor(rr, n.module, 0).dim() == n.module.dim(); });
            s.run(n.name + " Ext^0(R,n)", [&] { return ext(rl, n.module, 0).dim() == n.module.dim(); });
        }
        for (const auto& m : d.right)
            s.run(m.name + " Tor_0(m,R)", [&] { return tor(m.module, rl, 0).dim() == m.module.dim(); });
    } else if (name == "les") {
        for (const auto& n : d.left) {
            const auto sub = radical_submodule(n.module);
            if (sub.dim() == 0 || sub.dim() == n.module.dim()) continue;
            s.run(n.name + " 0->Jn->n->n/Jn->0", [&] {
                return les_check(submodule_sequence(n.module, sub), kr, 0, d.big ? 2 : 3).exact;
            });
        }
    } else if (name == "vanishing") {
        for (const auto& n : d.left)
            if (n.injective)
                for (long i = -2; i <= 2; ++i)
                    s.run(pair_label({"k", kr}, n, i), [&] { return stab_zero(complete_homology(kr, n.module, i, depth + 1, w)); });
        for (const auto& m : d.right)
            if (m.projective)
                for (long i = -2; i <= 2; ++i)
                    s.run(pair_label(m, {"k", kl}, i), [&] { return stab_zero(complete_homology(m.module, kl, i, depth + 1, w)); });
    } else if (name == "satellite") {
        for (std::size_t x = 0; x < few; ++x)
            for (std::size_t y = 0; y < few; ++y)
                for (long i = -1; i <= 1; ++i)
                    s.run(pair_label(d.right[x], d.left[y], i), [&] {
                        // The satellite tower lags one stage; give it room for a verdict.
                        return satellite_cross_check(d.right[x].module, d.left[y].module, i, depth + 1, w).pass;
                    });
    } else if (name == "left_satellite") {
        for (std::size_t x = 0; x < few; ++x)
            for (std::size_t y = 0; y < few; ++y)
                for (long i = 0; i <= 2; ++i)
                    for (std::size_t k = 0; k <= (d.big ? 1u : 2u); ++k)
                        s.run(pair_label(d.right[x], d.left[y], i) + " k=" + std::to_string(k), [&] {
                            return left_satellite_check(d.right[x].module, i, k, d.left[y].module).pass;
                        });
    } else if (name == "dimension_shift") {
        if (!d.self_injective) return s;
        for (std::size_t y = 0; y < few; ++y)
            for (long i = -1; i <= 1; ++i)
                for (std::size_t steps = 1; steps <= 2; ++steps)
                    s.run(pair_label({"k", kr}, d.left[y], i) + " n=" + std::to_string(steps),
                          [&]() -> std::optional<bool> {
                              auto r = dimension_shift_check(kr, d.left[y].module, i, steps, 4, w);
                              if (!r.conclusive) return std::nullopt;
                              return r.pass;
                          });
    } else if (name == "ext_routes") {
        for (std::size_t x = 0; x < few; ++x)
            for (std::size_t y = 0; y < few; ++y)
                for (long i = 0; i <= 2; ++i)
                    s.run(pair_label(d.left[x], d.left[y], i), [&] {
                        // Ext -> uHom is onto at t = 0 and bijective for t >= 1.
                        auto bc = bc_ext(d.left[x].module, d.left[y].module, i, depth, w);
                        auto pc = pcomp_ext(d.left[x].module, d.left[y].module, i, depth, w);
                        bool ok = bc.dims.size() == pc.dims.size() && bc.dims[0] <= pc.dims[0];
                        for (std::size_t t = 1; ok && t < bc.dims.size(); ++t) ok = bc.dims[t] == pc.dims[t];
                        return ok && cohom_agreement(ExtSystem(d.left[x].module, d.left[y].module, i, depth)).pass;
                    });
    } else if (name == "duality_bridge") {
        for (std::size_t x = 0; x < few; ++x)
            for (std::size_t y = 0; y < few; ++y)
                for (long i = -1; i <= 1; ++i)
                    s.run(pair_label(d.right[x], d.right[y], i), [&] {
                        return duality_bridge_check(d.right[x].module, d.right[y].module, i, depth).pass;
                    });
    }
    return s;
}

const std::vector<std::string> kSuites{"unit_laws", "les",           "vanishing",  "satellite",
                                       "left_satellite", "dimension_shift", "ext_routes", "duality_bridge"};

}  // namespace

RunResult run_corpus(const CorpusRequest& req) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CorpusData> data;
    for (const auto& name : req.algebras) {
        CorpusData d;
        d.a = resolve_algebra(name);
        d.left = module_corpus(d.a, Side::Left, req.count, req.seed, req.max_dim);
        d.right = module_corpus(d.a, Side::Right, req.count, req.seed + 1, req.max_dim);
        d.self_injective = is_self_injective(d.a).self_injective;
        // Non-self-injective algebras of this size have exponential Betti growth.
        d.big = !d.self_injective;
        data.push_back(std::move(d));
    }
    const std::size_t tasks = data.size() * kSuites.size();
    std::vector<Suite> suites(tasks);
    parallel_for(tasks, [&](std::size_t t) {
        suites[t] = run_suite(kSuites[t % kSuites.size()], data[t / kSuites.size()]);
    });

    Json algebras = Json::array();
    bool ok = true;
    std::size_t checked = 0, failed = 0;
    for (std::size_t x = 0; x < data.size(); ++x) {
        Json mods = Json::array();
        for (const auto* side : {&data[x].left, &data[x].right})
            for (const auto& e : *side)
                mods.push_back(Json{{"name", e.name},
                                    {"side", side_name(e.module.side())},
                                    {"dim", e.module.dim()},
                                    {"projective", e.projective},
                                    {"injective", e.injective},
                                    {"sha256", sha256_hex(module_to_json(e.module, "").dump())}});
        Json js = Json::array();
        for (std::size_t k = 0; k < kSuites.size(); ++k) {
            const auto& s = suites[x * kSuites.size() + k];
            checked += s.checked;
            failed += s.failed;
            if (s.failed) ok = false;
            js.push_back(s.to_json());
        }
        algebras.push_back(Json{{"algebra", req.algebras[x]},
                                {"sha256", sha256_hex(algebra_to_json(*data[x].a).dump())},
                                {"modules", std::move(mods)},
                                {"suites", std::move(js)}});
    }
    Json report{{"tool", kToolVersion},
                {"kind", "corpus"},
                {"request", corpus_request_to_json(req)},
                {"algebras", std::move(algebras)},
                {"checked", checked},
                {"failed", failed},
                {"ok", ok}};
    report["timing"] = Json{{"total_ms", elapsed_ms(t0)}};
    seal_report(report);
    return {std::move(report), ok};
}

std::string report_to_csv(const Json& report) {
    std::ostringstream out;
    auto dim_or_blank = [](const Json& j, const char* key) -> std::string {
        if (!j.is_object() || !j.contains(key)) return "";
        return j[key].dump();
    };
    if (report.value("kind", "") == "corpus") {
        out << "algebra,suite,checked,failed,inconclusive\n";
        for (const auto& a : report["algebras"])
            for (const auto& s : a["suites"])
                out << a["algebra"].get<std::string>() << ',' << s["suite"].get<std::string>() << ','
                    << s["checked"] << ',' << s["failed"] << ',' << s["inconclusive"] << '\n';
        return out.str();
    }
    out << "theory,degree,dim,verdict,limit_dim,dims\n";
    const std::string theory = report["request"]["theory"].get<std::string>();
    for (const auto& r : report["results"]) {
        const long i = r["degree"].get<long>();
        if (r.contains("dim")) out << theory << ',' << i << ',' << r["dim"] << ",,,\n";
        for (const char* key : {"complete", "stable"}) {
            if (!r.contains(key)) continue;
            const auto& s = r[key];
            std::string dims;
            if (s.contains("dims"))
                for (const auto& x : s["dims"]) dims += (dims.empty() ? "" : " ") + x.dump();
            std::string verdict = s.contains("verdict") ? s["verdict"].get<std::string>() : "error";
            out << key << ',' << i << ",," << verdict << ',' << dim_or_blank(s, "limit_dim") << ',' << dims << '\n';
        }
        if (r.contains("tate")) out << "tate," << i << ',' << dim_or_blank(r["tate"], "dim") << ",,,\n";
    }
    return out.str();
}

}  // namespace homct
