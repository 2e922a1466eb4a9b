// anchorfoam command line front end. Talks to the engine exclusively through
// the C API in anchorfoam.h; all heavy lifting happens behind the handles.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "anchorfoam.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

int status_to_exit(af_status s) {
    switch (s) {
        case AF_OK: return kExitOk;
        case AF_CHECK_FAILED: return kExitCheckFailed;
        default: return kExitInputError;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct StringOut {
    char* p = nullptr;
    ~StringOut() { af_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

int fail_input(const std::string& context) {
    std::cerr << "error: " << context << ": " << af_last_error() << "\n";
    return kExitInputError;
}

struct FoamHandle {
    af_foam* p = nullptr;
    ~FoamHandle() { af_foam_free(p); }
};
struct WebHandle {
    af_web* p = nullptr;
    ~WebHandle() { af_web_free(p); }
};
struct DiagramHandle {
    af_diagram* p = nullptr;
    ~DiagramHandle() { af_diagram_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anchorfoam: anchored gl_N foam evaluation and annular web calculus"};
    app.require_subcommand(1);

    int n = 2;
    std::uint64_t seed = 0x5eed;
    int threads = 1;
    std::string format = "text";
    app.add_option("--n", n, "number of colors N")->check(CLI::Range(1, 16));
    app.add_option("--seed", seed, "random seed (recorded in output)");
    app.add_option("--threads", threads, "worker cap for parallel sections");
    app.add_option("--format", format, "output format: text | records")
        ->check(CLI::IsMember({"text", "records"}));

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a closed anchored foam");
    std::string eval_path;
    bool per_coloring = false;
    eval_cmd->add_option("foam", eval_path, "foam JSON file")->required();
    eval_cmd->add_flag("--per-coloring", per_coloring, "dump colored evaluation rows");

    // colorings
    auto* col_cmd = app.add_subcommand("colorings", "list admissible colorings of a foam");
    std::string col_path;
    col_cmd->add_option("foam", col_path, "foam JSON file")->required();

    // degrees
    auto* deg_cmd = app.add_subcommand("degrees", "print qdeg and adeg of a foam");
    std::string deg_path;
    deg_cmd->add_option("foam", deg_path, "foam JSON file")->required();

    // relations
    auto* rel_cmd = app.add_subcommand("relations", "run the local-relation suite");

    // web-eval
    auto* web_cmd = app.add_subcommand("web-eval", "evaluate an annular MOY web");
    std::string web_path;
    web_cmd->add_option("web", web_path, "web JSON file")->required();

    // gram
    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of bounding foams");
    std::string gram_web_path, gram_foams_path;
    gram_cmd->add_option("web", gram_web_path, "boundary web JSON file (context)")->required();
    gram_cmd->add_option("foams", gram_foams_path, "JSON list of foams")->required();

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "numeric rank of a Gram matrix");
    std::string rank_foams_path, spec_csv;
    rank_cmd->add_option("foams", rank_foams_path, "JSON list of foams")->required();
    rank_cmd->add_option("--spec", spec_csv, "comma-separated rational specialization");

    // probe-equal
    auto* probe_cmd = app.add_subcommand("probe-equal", "compare two foam maps on probes");
    std::string probe_path;
    probe_cmd->add_option("pair", probe_path, "JSON file with f, g, probes_in, probes_out")
        ->required();

    // complex
    auto* complex_cmd = app.add_subcommand("complex", "cube of resolutions of a diagram");
    std::string diagram_path, d2_probes;
    bool do_euler = false, do_dump = false, do_d2 = false, d2_negate = false;
    complex_cmd->add_option("diagram", diagram_path, "diagram JSON file")->required();
    complex_cmd->add_flag("--euler", do_euler, "graded Euler characteristic");
    complex_cmd->add_flag("--cube-dump", do_dump, "list cube vertices and edges");
    complex_cmd->add_flag("--d2-check", do_d2, "probe-based d^2 = 0 check");
    complex_cmd->add_flag("--d2-negate", d2_negate, "negative control (expected to fail)");
    complex_cmd
        ->add_option("--probes", d2_probes,
                     "probe JSON file (unused; default probes are generated)")
        ->expected(0, 1);

    // Global flags may appear after the subcommand (anchorfoam eval --n 2 ...).
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    bool records = format == "records";

    try {
        if (*eval_cmd) {
            FoamHandle f{af_foam_parse(slurp(eval_path).c_str(), n)};
            if (!f.p) return fail_input(eval_path);
            StringOut diag{af_foam_validate(f.p, n)};
            if (!diag.str().empty() && diag.str().find("error") != std::string::npos) {
                std::cerr << diag.str();
                return kExitInputError;
            }
            af_status st = AF_OK;
            StringOut value{af_foam_evaluate(f.p, n, &st)};
            if (!value.p) {
                std::cerr << "error: " << af_last_error() << "\n";
                return status_to_exit(st);
            }
            int qd = 0;
            std::vector<int> ad(n, 0);
            af_foam_qdeg(f.p, n, &qd);
            af_foam_adeg(f.p, n, ad.data());
            long count = 0;
            af_foam_coloring_count(f.p, n, &count);
            std::ostringstream adeg;
            adeg << "(";
            for (int i = 0; i < n; ++i) adeg << (i ? "," : "") << ad[i];
            adeg << ")";
            if (records) {
                std::cout << "value\t" << value.str() << "\n";
                std::cout << "qdeg\t" << qd << "\n";
                std::cout << "adeg\t" << adeg.str() << "\n";
                std::cout << "colorings\t" << count << "\n";
            } else {
                std::cout << "<F> = " << value.str() << "\n";
                std::cout << "qdeg = " << qd << "\n";
                std::cout << "adeg = " << adeg.str() << "\n";
                std::cout << "colorings = " << count << "\n";
            }
            if (!diag.str().empty()) std::cerr << diag.str();
            if (per_coloring) {
                StringOut rows{af_foam_colorings(f.p, n, 1, &st)};
                if (rows.p) std::cout << rows.str();
            }
            return kExitOk;
        }
        if (*col_cmd) {
            FoamHandle f{af_foam_parse(slurp(col_path).c_str(), n)};
            if (!f.p) return fail_input(col_path);
            af_status st = AF_OK;
            StringOut rows{af_foam_colorings(f.p, n, 0, &st)};
            if (!rows.p) {
                std::cerr << "error: " << af_last_error() << "\n";
                return status_to_exit(st);
            }
            std::cout << rows.str();
            return kExitOk;
        }
        if (*deg_cmd) {
            FoamHandle f{af_foam_parse(slurp(deg_path).c_str(), n)};
            if (!f.p) return fail_input(deg_path);
            int qd = 0;
            std::vector<int> ad(n, 0);
            if (af_foam_qdeg(f.p, n, &qd) != AF_OK) return fail_input("qdeg");
            af_foam_adeg(f.p, n, ad.data());
            std::cout << "qdeg = " << qd << "\nadeg = (";
            for (int i = 0; i < n; ++i) std::cout << (i ? "," : "") << ad[i];
            std::cout << ")\n";
            return kExitOk;
        }
        if (*rel_cmd) {
            af_status st = AF_OK;
            StringOut rep{af_relations_run(n, &st)};
            if (!rep.p) {
                std::cerr << "error: " << af_last_error() << "\n";
                return status_to_exit(st);
            }
            std::cout << rep.str();
            std::cout << "seed = " << seed << "\n";
            return status_to_exit(st);
        }
        if (*web_cmd) {
            WebHandle w{af_web_parse(slurp(web_path).c_str(), n)};
            if (!w.p) return fail_input(web_path);
            StringOut diag{af_web_validate(w.p, n)};
            if (!diag.str().empty()) {
                std::cerr << diag.str();
                return kExitInputError;
            }
            af_status st = AF_OK;
            StringOut value{af_web_evaluate(w.p, n, &st)};
            if (!value.p) {
                std::cerr << "error: " << af_last_error() << "\n";
                return status_to_exit(st);
            }
            std::cout << value.str() << "\n";
            return kExitOk;
        }
        if (*gram_cmd) {
            // The web argument documents the boundary; entries come from foams.
            (void)slurp(gram_web_path);
            af_status st = AF_OK;
            StringOut m{af_gram(slurp(gram_foams_path).c_str(), n, threads, &st)};
            if (!m.p) {
                std::cerr << "error: " << af_last_error() << "\n";
                return status_to_exit(st);
            }
            std::cout << m.str();
            return kExitOk;
        }
        if (*rank_cmd) {
            int degenerate = 0;
            int r = af_rank(slurp(rank_foams_path).c_str(), n,
                            spec_csv.empty() ? nullptr : spec_csv.c_str(), seed, &degenerate);
            if (r < 0) {
                std::cerr << "error: " << af_last_error() << "\n";
                return kExitInputError;
            }
            std::cout << "rank = " << r << "\n";
            std::cout << "seed = " << seed << "\n";
            if (degenerate)
                std::cout << "warning: specialization looks degenerate; retry advised\n";
            return kExitOk;
        }
        if (*probe_cmd) {
            int r = af_probe_equal(slurp(probe_path).c_str(), n);
            if (r < 0) {
                std::cerr << "error: " << af_last_error() << "\n";
                return kExitInputError;
            }
            std::cout << (r ? "equal on probes" : "differ on probes") << "\n";
            return r ? kExitOk : kExitCheckFailed;
        }
        if (*complex_cmd) {
            DiagramHandle d{af_diagram_parse(slurp(diagram_path).c_str(), n)};
            if (!d.p) return fail_input(diagram_path);
            if (!do_euler && !do_dump && !do_d2) do_euler = true;
            af_status worst = AF_OK;
            if (do_euler) {
                af_status st = AF_OK;
                StringOut v{af_complex_euler(d.p, n, &st)};
                if (!v.p) {
                    std::cerr << "error: " << af_last_error() << "\n";
                    return status_to_exit(st);
                }
                std::cout << (records ? "euler\t" : "euler = ") << v.str() << "\n";
            }
            if (do_dump) {
                af_status st = AF_OK;
                StringOut v{af_complex_cube_dump(d.p, n, &st)};
                if (!v.p) {
                    std::cerr << "error: " << af_last_error() << "\n";
                    return status_to_exit(st);
                }
                std::cout << v.str();
            }
            if (do_d2) {
                af_status st = AF_OK;
                StringOut v{af_complex_d2_check(d.p, n, d2_negate ? 1 : 0, &st)};
                if (!v.p) {
                    std::cerr << "error: " << af_last_error() << "\n";
                    return status_to_exit(st);
                }
                std::cout << v.str();
                if (st != AF_OK) worst = st;
            }
            return status_to_exit(worst);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
