#include "anchorfoam.h"

#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "complex.hpp"
#include "eval.hpp"
#include "foam.hpp"
#include "io.hpp"
#include "statespace.hpp"
#include "web.hpp"

using namespace anchorfoam;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(const std::string& msg) { g_last_error = msg; }

af_status classify_exception() {
    try {
        throw;
    } catch (const ParseError& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const SchemaVersionMismatch& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const ValidationFailed& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const BadColors& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const BadDiagram& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const BadParams& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const BoundaryMismatch& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const UnsupportedThickness& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const NotPolynomial& e) {
        set_error(e.what());
        return AF_CHECK_FAILED;
    } catch (const OddAnchorParity& e) {
        set_error(e.what());
        return AF_CHECK_FAILED;
    } catch (const InvalidLocalSurface& e) {
        set_error(e.what());
        return AF_CHECK_FAILED;
    } catch (const NonTerminating& e) {
        set_error(e.what());
        return AF_CHECK_FAILED;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return AF_INPUT_ERROR;
    } catch (const std::exception& e) {
        set_error(e.what());
        return AF_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return AF_INTERNAL;
    }
}

}  // namespace

struct af_foam {
    CellFoam foam;
};
struct af_web {
    AnnularWeb web;
};
struct af_diagram {
    ColoredAnnularDiagram diagram;
};

extern "C" {

AF_API const char* af_version(void) { return "anchorfoam 0.1.0"; }

AF_API const char* af_last_error(void) { return g_last_error.c_str(); }

AF_API void af_string_free(char* s) { std::free(s); }

AF_API af_foam* af_foam_parse(const char* json_text, int n) {
    try {
        auto* out = new af_foam{parse_foam(json_text ? json_text : "", n)};
        return out;
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API af_web* af_web_parse(const char* json_text, int n) {
    try {
        return new af_web{parse_web(json_text ? json_text : "", n)};
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API af_diagram* af_diagram_parse(const char* json_text, int n) {
    try {
        auto* d = new af_diagram{parse_diagram(json_text ? json_text : "")};
        (void)n;
        return d;
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API void af_foam_free(af_foam* f) { delete f; }
AF_API void af_web_free(af_web* w) { delete w; }
AF_API void af_diagram_free(af_diagram* d) { delete d; }

AF_API char* af_foam_serialize(const af_foam* f) {
    try {
        return dup_string(serialize_foam(f->foam));
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API char* af_web_serialize(const af_web* w) {
    try {
        return dup_string(serialize_web(w->web));
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API char* af_diagram_serialize(const af_diagram* d) {
    try {
        return dup_string(serialize_diagram(d->diagram));
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API char* af_foam_validate(const af_foam* f, int n) {
    try {
        std::ostringstream os;
        for (const Diagnostic& d : f->foam.validate(n))
            os << (d.warning ? "warning " : "error ") << d.code << ": " << d.detail << "\n";
        return dup_string(os.str());
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API char* af_foam_evaluate(const af_foam* f, int n, af_status* status) {
    try {
        if (!f->foam.valid(n)) {
            set_error("foam fails validation");
            if (status) *status = AF_INPUT_ERROR;
            return nullptr;
        }
        MultiPoly v = evaluate(f->foam, n);
        if (status) *status = AF_OK;
        return dup_string(v.to_string());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API af_status af_foam_qdeg(const af_foam* f, int n, int* out) {
    try {
        *out = qdeg_foam(f->foam, n);
        return AF_OK;
    } catch (...) {
        return classify_exception();
    }
}

AF_API af_status af_foam_adeg(const af_foam* f, int n, int* out) {
    try {
        std::vector<int> v = adeg_foam(f->foam, n);
        for (int i = 0; i < n; ++i) out[i] = v[i];
        return AF_OK;
    } catch (...) {
        return classify_exception();
    }
}

AF_API af_status af_foam_coloring_count(const af_foam* f, int n, long* out) {
    try {
        *out = static_cast<long>(enumerate_colorings(f->foam, n).size());
        return AF_OK;
    } catch (...) {
        return classify_exception();
    }
}

AF_API char* af_foam_colorings(const af_foam* f, int n, int per_coloring,
                               af_status* status) {
    try {
        std::ostringstream os;
        for (const Coloring& c : enumerate_colorings(f->foam, n)) {
            os << "coloring";
            for (Subset s : c) {
                os << " {";
                bool first = true;
                for (int e : subset_elements(s)) {
                    if (!first) os << ",";
                    first = false;
                    os << e;
                }
                os << "}";
            }
            if (per_coloring) {
                ColoredEvaluation e = evaluate_colored(f->foam, n, c);
                os << " s=" << e.sign_exponent << " P=" << e.p.to_string()
                   << " Q=" << e.q.to_string() << " Qtilde=" << e.qtilde.to_string();
            }
            os << "\n";
        }
        if (status) *status = AF_OK;
        return dup_string(os.str());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API char* af_relations_run(int n, af_status* status) {
    try {
        std::ostringstream os;
        bool ok = true;
        for (const RelationResult& r : relation_suite(n)) {
            os << r.name << ": " << (r.passed ? "ok" : "FAILED") << " (" << r.cases
               << " cases)";
            if (!r.passed) os << " witness: " << r.witness;
            os << "\n";
            ok = ok && r.passed;
        }
        if (status) *status = ok ? AF_OK : AF_CHECK_FAILED;
        return dup_string(os.str());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API char* af_web_validate(const af_web* w, int n) {
    try {
        std::ostringstream os;
        for (const WebDiagnostic& d : validate_web(w->web, n))
            os << d.code << ": " << d.detail << "\n";
        return dup_string(os.str());
    } catch (...) {
        classify_exception();
        return nullptr;
    }
}

AF_API char* af_web_evaluate(const af_web* w, int n, af_status* status) {
    try {
        LaurentGraded v = evaluate_web(w->web, n);
        if (status) *status = AF_OK;
        return dup_string(v.to_string());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API char* af_gram(const char* foams_json, int n, int threads, af_status* status) {
    try {
        std::vector<CellFoam> foams = parse_foam_list(foams_json ? foams_json : "", n);
        GramMatrix m = gram(foams, n, threads <= 0 ? 1 : threads);
        std::ostringstream os;
        for (int r = 0; r < m.rows; ++r) {
            for (int c = 0; c < m.cols; ++c) {
                if (c) os << " | ";
                os << m.at(r, c).to_string();
            }
            os << "\n";
        }
        if (status) *status = AF_OK;
        return dup_string(os.str());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API int af_rank(const char* foams_json, int n, const char* spec_csv, uint64_t seed,
                   int* degenerate) {
    try {
        std::vector<CellFoam> foams = parse_foam_list(foams_json ? foams_json : "", n);
        GramMatrix m = gram(foams, n);
        Specialization s;
        if (spec_csv && *spec_csv) {
            std::stringstream ss(spec_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                size_t slash = item.find('/');
                if (slash == std::string::npos) {
                    s.values.push_back(BigRat(BigInt(item)));
                } else {
                    s.values.push_back(
                        BigRat(BigInt(item.substr(0, slash)), BigInt(item.substr(slash + 1))));
                }
            }
            if (static_cast<int>(s.values.size()) != n)
                throw ValidationFailed("specialization needs exactly N values");
        } else {
            s = Specialization::standard(n);
        }
        RankResult r = rank_at_specialization(m, s, seed);
        if (degenerate) *degenerate = r.degenerate_warning ? 1 : 0;
        return r.rank;
    } catch (...) {
        classify_exception();
        return -1;
    }
}

AF_API int af_probe_equal(const char* pair_json, int n) {
    try {
        nlohmann::json j = nlohmann::json::parse(pair_json ? pair_json : "");
        CellFoam f = parse_foam(j.at("f").dump(), n);
        CellFoam g = parse_foam(j.at("g").dump(), n);
        std::vector<CellFoam> pin, pout;
        for (const auto& item : j.value("probes_in", nlohmann::json::array()))
            pin.push_back(parse_foam(item.dump(), n));
        for (const auto& item : j.value("probes_out", nlohmann::json::array()))
            pout.push_back(parse_foam(item.dump(), n));
        return probe_equal(f, g, pin, pout, n) ? 1 : 0;
    } catch (const nlohmann::json::exception& e) {
        set_error(e.what());
        return -1;
    } catch (...) {
        classify_exception();
        return -1;
    }
}

AF_API char* af_complex_euler(const af_diagram* d, int n, af_status* status) {
    try {
        LaurentGraded v = euler_characteristic(d->diagram, n);
        if (status) *status = AF_OK;
        return dup_string(v.to_string());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API char* af_complex_cube_dump(const af_diagram* d, int n, af_status* status) {
    try {
        CubeComplex cube = build_complex(d->diagram, n, false);
        std::ostringstream os;
        for (size_t v = 0; v < cube.vertices.size(); ++v) {
            const CubeVertex& cv = cube.vertices[v];
            os << "vertex";
            for (int t : cv.choices) os << " " << t;
            os << " hdeg=" << cv.hdeg << " qshift=" << cv.qshift
               << " web=" << evaluate_web(cv.web, n).to_string() << "\n";
        }
        for (const CubeEdge& e : cube.edges)
            os << "edge " << e.from << " -> " << e.to << " crossing=" << e.crossing
               << " sign=" << e.sign << "\n";
        if (status) *status = AF_OK;
        return dup_string(os.str());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

AF_API char* af_complex_d2_check(const af_diagram* d, int n, int negate,
                                 af_status* status) {
    try {
        D2Report rep = d2_probe_check(d->diagram, n, negate != 0);
        std::ostringstream os;
        for (const SquareReport& sq : rep.squares) {
            os << "square c" << sq.c1 << ",c" << sq.c2 << " base";
            for (int t : sq.base) os << " " << t;
            if (!sq.checked) os << " skipped: " << sq.note;
            else os << (sq.passed ? " ok" : " FAILED");
            os << "\n";
        }
        if (rep.squares.empty()) os << "no squares (vacuous pass)\n";
        bool ok = negate ? (!rep.any_checked || !rep.all_passed)
                         : (!rep.any_checked || rep.all_passed);
        if (status) *status = ok ? AF_OK : AF_CHECK_FAILED;
        return dup_string(os.str());
    } catch (...) {
        af_status s = classify_exception();
        if (status) *status = s;
        return nullptr;
    }
}

}  // extern "C"
