// homct command-line frontend over the C API.
// Exit codes: 0 clean run, 1 invariant violation or internal mismatch, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homct/homct.h"

namespace {

using Json = nlohmann::json;

struct Common {
    std::string algebra, module_m, module_n, theory = "compare", degrees = "0..0", out, format = "json";
    std::size_t depth = 5, window = 2;
    std::uint64_t seed = 1;
};

bool parse_range(const std::string& s, long& lo, long& hi) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stol(s);
            return true;
        }
        lo = std::stol(s.substr(0, dots));
        hi = std::stol(s.substr(dots + 2));
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

int emit(const char* text, const std::string& out) {
    if (out.empty()) {
        std::fputs(text, stdout);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "homct: cannot write " << out << "\n";
        return 2;
    }
    f << text;
    return f ? 0 : 2;
}

int finish(homct_status st, char* text, int ok, const std::string& out) {
    if (st != HOMCT_OK) {
        std::cerr << "homct: " << homct_last_error() << "\n";
        return 2;
    }
    const int rc = emit(text, out);
    homct_string_free(text);
    if (rc) return rc;
    return ok ? 0 : 1;
}

homct_format format_of(const std::string& f) { return f == "csv" ? HOMCT_FORMAT_CSV : HOMCT_FORMAT_JSON; }

void add_compute_options(CLI::App* cmd, Common& c, bool with_theory) {
    cmd->add_option("--algebra", c.algebra, "algebra JSON file or fixture name A1..A4")->required();
    cmd->add_option("--module-m", c.module_m, "right module M: JSON file or k, R, DR, R/(x,...)")->required();
    cmd->add_option("--module-n", c.module_n, "left module N: JSON file or k, R, DR, R/(x,...)")->required();
    if (with_theory)
        cmd->add_option("--theory", c.theory, "tor, ext, tate, stable, complete or compare")
            ->check(CLI::IsMember({"tor", "ext", "tate", "stable", "complete", "compare"}));
    cmd->add_option("--degrees", c.degrees, "degree range lo..hi (use --degrees=-4..4 for negative lo)");
    cmd->add_option("--depth", c.depth, "tower depth K");
    cmd->add_option("--window", c.window, "stabilization window w");
    cmd->add_option("--seed", c.seed, "seed");
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

int run_compute(const Common& c, const std::string& theory) {
    long lo = 0, hi = 0;
    if (!parse_range(c.degrees, lo, hi)) {
        std::cerr << "homct: bad degree range " << c.degrees << "\n";
        return 2;
    }
    Json req{{"algebra", c.algebra}, {"module_m", c.module_m}, {"module_n", c.module_n}, {"theory", theory},
             {"degrees", {lo, hi}},  {"depth", c.depth},       {"window", c.window},     {"seed", c.seed}};
    char* text = nullptr;
    int ok = 0;
    auto st = homct_run_compute(req.dump().c_str(), format_of(c.format), &text, &ok);
    return finish(st, text, ok, c.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete, stable and Tate homology over finite-dimensional algebras"};
    app.set_version_flag("--version", std::string(homct_version()));
    app.require_subcommand(1);

    Common compute, compare;
    auto* c1 = app.add_subcommand("compute", "compute one theory over a degree range");
    add_compute_options(c1, compute, true);
    auto* c2 = app.add_subcommand("compare", "complete vs stable vs Tate homology with an agreement matrix");
    add_compute_options(c2, compare, false);

    std::uint64_t seed = 1;
    std::size_t count = 6, max_dim = 6;
    std::string algebras = "A1,A2,A3,A4", corpus_out, corpus_format = "json";
    auto* c3 = app.add_subcommand("corpus", "run the invariant suites on a seeded module corpus");
    c3->add_option("--seed", seed, "corpus seed");
    c3->add_option("--count", count, "modules per algebra and side");
    c3->add_option("--max-dim", max_dim, "largest module dimension");
    c3->add_option("--algebras", algebras, "comma-separated algebra files or fixture names");
    c3->add_option("--out", corpus_out, "output file (default stdout)");
    c3->add_option("--format", corpus_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string d_algebra, d_module, d_side = "left", d_out;
    std::size_t d_depth = 6;
    auto* c4 = app.add_subcommand("dump-resolution", "minimal projective resolution as JSON");
    c4->add_option("--algebra", d_algebra, "algebra JSON file or fixture name")->required();
    c4->add_option("--module,--module-m", d_module, "module JSON file or token")->required();
    c4->add_option("--side", d_side, "left or right")->check(CLI::IsMember({"left", "right"}));
    c4->add_option("--depth", d_depth, "number of degrees");
    c4->add_option("--out", d_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (c1->parsed()) return run_compute(compute, compute.theory);
    if (c2->parsed()) return run_compute(compare, "compare");
    if (c3->parsed()) {
        Json list = Json::array();
        std::string item;
        for (std::size_t k = 0; k <= algebras.size(); ++k) {
            if (k == algebras.size() || algebras[k] == ',') {
                if (!item.empty()) list.push_back(item);
                item.clear();
            } else {
                item.push_back(algebras[k]);
            }
        }
        Json req{{"seed", seed}, {"count", count}, {"max_dim", max_dim}, {"algebras", list}};
        char* text = nullptr;
        int ok = 0;
        auto st = homct_run_corpus(req.dump().c_str(), format_of(corpus_format), &text, &ok);
        return finish(st, text, ok, corpus_out);
    }
    char* text = nullptr;
    auto st = homct_dump_resolution(d_algebra.c_str(), d_module.c_str(), d_side == "right" ? HOMCT_RIGHT : HOMCT_LEFT,
                                    d_depth, &text);
    return finish(st, text, 1, d_out);
}
