// qwk: exact q-Witt vector / q-Hodge cohomology workbench.
//
// Subcommands:
//   wittcalc  {add|mul|ghost|frob|versch|teich|decompose}  Witt vector calculator
//   qwitt     {present|cmap}                               q-Witt rings
//   qhodge    cohomology                                   q-Hodge cohomology tables
//   qdrw      verify                                       model verification suites
//   verify                                                 combined suite runner
//   golden    [--update] [--force]                         golden value management
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qwk/lambda.hpp"
#include "qwk/qdrw.hpp"
#include "qwk/qwitt_checks.hpp"
#include "qwk/report.hpp"

using namespace qwk;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(const Report& rep) { return rep.failed() == 0 ? 0 : 1; }

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

std::vector<long> parse_m_list(const std::string& s) {
    std::vector<long> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t k = s.find(',', pos);
        std::string piece = k == std::string::npos ? s.substr(pos) : s.substr(pos, k - pos);
        if (!piece.empty()) out.push_back(std::stol(piece));
        if (k == std::string::npos) break;
        pos = k + 1;
    }
    return out;
}

int run_wittcalc(const std::string& op, const std::string& ring_spec, long m,
                 const std::string& xs, const std::string& ys, long k, long n) {
    Ring ring(RingSpec::parse(ring_spec));
    WittOps w(ring, m);
    if (op == "teich") {
        std::cout << w.to_string(w.teichmuller(ring.parse(xs))) << "\n";
        return 0;
    }
    if (op == "versch") {
        // V_k maps level m/k into level m
        WittOps sub(ring, m / k);
        std::cout << w.to_string(w.verschiebung(sub.parse(xs), k)) << "\n";
        return 0;
    }
    WittVec x = w.parse(xs);
    if (op == "add" || op == "mul") {
        WittVec y = w.parse(ys);
        std::cout << w.to_string(op == "add" ? w.add(x, y) : w.mul(x, y)) << "\n";
    } else if (op == "ghost") {
        if (n == 0) {
            for (long d : w.trunc().divisors)
                std::cout << "gh_" << d << " = " << ring.to_string(w.ghost(x, d)) << "\n";
        } else {
            std::cout << ring.to_string(w.ghost(x, n)) << "\n";
        }
    } else if (op == "frob") {
        WittOps sub(ring, m / k);
        std::cout << sub.to_string(w.frobenius(x, k)) << "\n";
    } else if (op == "decompose") {
        for (auto& [d, c] : w.decompose(x))
            std::cout << "V_" << m / d << "(tau_" << d << "(" << ring.to_string(c) << "))\n";
    } else {
        throw CLI::ValidationError("unknown wittcalc operation " + op);
    }
    return 0;
}

int run_present(const std::string& ring_spec, long m, const std::string& emit) {
    Ring ring(RingSpec::parse(ring_spec));
    QwFamily fam(ring, m);
    const QwLevel& lvl = fam.at(m);
    std::vector<std::string> factors;
    for (const Int& f : lvl.invariant_factors())
        if (f != 1) factors.push_back(f.get_str());
    // structural checks bundled with the dump
    std::vector<std::pair<std::string, bool>> checks;
    for (auto& c : check_fv_relations(fam, m)) checks.emplace_back(c.name, c.pass);
    for (auto& c : check_verschiebung_injective(fam, m)) checks.emplace_back(c.name, c.pass);

    // F/V maps tabulated on the pivot coordinates of each level: column c of
    // the table is the image of the c-th coordinate unit vector, written in
    // the target level's pivot coordinates
    auto tabulate = [&](const QwLevel& src, const QwLevel& dst, const IntMat& expr) {
        auto src_coords = src.coordinate_radices();
        auto dst_coords = dst.coordinate_radices();
        ordered_json rows = ordered_json::array();
        for (auto& [pos, rad] : src_coords) {
            std::vector<Int> unit(src.K(), 0);
            unit[pos] = 1;
            std::vector<Int> img = dst.normal_form(mat_vec_row(unit, expr));
            ordered_json row = ordered_json::array();
            for (auto& [dpos, drad] : dst_coords) row.push_back(img[dpos].get_str());
            rows.push_back(row);
        }
        return rows;
    };

    if (emit == "json") {
        ordered_json j;
        j["backend"] = "presented";
        j["m"] = m;
        j["ring"] = ring.spec().to_string();
        j["order"] = lvl.order().get_str();
        j["invariant_factors"] = factors;
        ordered_json coords = ordered_json::array();
        for (auto& [pos, rad] : lvl.coordinate_radices())
            coords.push_back({{"position", pos}, {"modulus", rad.get_str()}});
        j["coordinates"] = coords;
        ordered_json frob = ordered_json::object(), versch = ordered_json::object();
        for (long d : divisors_of(m)) {
            if (d == m) continue;
            frob["F_" + std::to_string(m / d)] =
                tabulate(lvl, fam.at(d), fam.frobenius_expr(m, m / d));
            versch["V_" + std::to_string(m / d)] =
                tabulate(fam.at(d), lvl, fam.verschiebung_expr(m, m / d));
        }
        j["frobenius"] = frob;
        j["verschiebung"] = versch;
        ordered_json arr = ordered_json::array();
        for (auto& [name, pass] : checks)
            arr.push_back({{"name", name}, {"status", pass ? "pass" : "fail"}});
        j["checks"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "qW_" << m << "(" << ring.spec().to_string() << "): order " << lvl.order()
                  << ", invariant factors [";
        for (size_t i = 0; i < factors.size(); ++i) std::cout << (i ? "," : "") << factors[i];
        std::cout << "]\n";
        for (auto& [name, pass] : checks)
            std::cout << "  [" << (pass ? "pass" : "FAIL") << "] " << name << "\n";
    }
    for (auto& [name, pass] : checks)
        if (!pass) return 1;
    return 0;
}

int run_cmap(long m, const std::string& lambda_kind, const std::string& elem) {
    Ring base = lambda_kind == "z" ? Ring(RingSpec::integers())
                                   : Ring(RingSpec::parse("poly:z:T"));
    LambdaStructure lam(base);
    WittOps w(base, m);
    WittVec x = w.parse(elem);
    CycQuotOps cyc(base, m);
    std::cout << cyc.to_string(c_map(lam, x, m)) << "\n";
    return 0;
}

int run_qhodge(long m, int nvars, int maxdeg, long p, long alpha, long prec,
               const std::string& emit, const std::string& out_path) {
    std::ostringstream os;
    ordered_json rows = ordered_json::array();
    auto emit_row = [&](const std::string& v, int degree, const std::vector<Int>& factors,
                        const std::string& charpoly) {
        if (emit == "json") {
            std::vector<std::string> fs;
            for (const Int& f : factors) fs.push_back(f.get_str());
            rows.push_back({{"multidegree", v},
                            {"degree", degree},
                            {"invariant_factors", fs},
                            {"q_action_charpoly", charpoly}});
        } else {
            os << v << "," << degree << ",\"[";
            for (size_t i = 0; i < factors.size(); ++i)
                os << (i ? "," : "") << factors[i].get_str();
            os << "]\"," << charpoly << "\n";
        }
    };

    // characteristic polynomial by fraction-free expansion (small sizes)
    auto charpoly = [](const IntMat& a) {
        size_t n = a.rows();
        // Faddeev-LeVerrier: exact over Z with divisions by integers
        std::vector<Int> coeffs(n + 1, 0);
        coeffs[0] = 1;
        IntMat mk = a;
        IntMat id = IntMat::identity(n);
        Int ck = 0;
        IntMat m_prev = id;
        for (size_t k = 1; k <= n; ++k) {
            if (k > 1) {
                IntMat tmp = m_prev;
                for (size_t i = 0; i < n; ++i) tmp.at(i, i) += coeffs[k - 1];
                mk = a * tmp;
                m_prev = mk;
            } else {
                m_prev = a;
                mk = a;
            }
            Int tr = 0;
            for (size_t i = 0; i < n; ++i) tr += mk.at(i, i);
            ck = int_div_exact(-tr, Int((long)k));
            coeffs[k] = ck;
        }
        std::ostringstream cs;
        for (size_t k = 0; k <= n; ++k) {
            if (k) cs << " ";
            cs << coeffs[k].get_str();
        }
        return cs.str();  // monic: x^n + c1 x^{n-1} + ... listed low-to-high in k
    };

    if (emit != "json") os << "multidegree,degree,invariant_factors,q_action_charpoly\n";
    std::vector<std::vector<uint32_t>> degs;
    {
        std::vector<uint32_t> v((size_t)nvars, 0);
        while (true) {
            degs.push_back(v);
            int i = 0;
            for (; i < nvars; ++i) {
                if (++v[i] <= (uint32_t)maxdeg) break;
                v[i] = 0;
            }
            if (i == nvars) break;
        }
    }
    Int modulus = 0;
    long mm = m;
    if (p > 0) {
        mm = 1;
        for (long t = 0; t < alpha; ++t) mm *= p;
        modulus = int_pow(Int(p), (unsigned long)prec);
    }
    for (const auto& v : degs) {
        KoszulScalarComplex cx = multidegree_complex(mm, v);
        for (int degree = 0; degree <= nvars; ++degree) {
            if (cx.rank(degree) == 0 && degree > 0) continue;
            FGModulePresentation h = cohomology(cx, degree, modulus);
            std::ostringstream vs;
            vs << "(";
            for (size_t i = 0; i < v.size(); ++i) vs << (i ? "," : "") << v[i];
            vs << ")";
            emit_row(vs.str(), degree, h.invariant_factors(), charpoly(h.q_action));
        }
    }
    if (emit == "json") {
        ordered_json j;
        j["m"] = mm;
        j["vars"] = nvars;
        j["maxdeg"] = maxdeg;
        if (p > 0) j["p"] = p;
        if (p > 0) j["precision_exponent"] = prec;
        j["rows"] = rows;
        write_out(out_path, j.dump(2) + "\n");
    } else {
        write_out(out_path, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-Witt / q-Hodge computer algebra workbench"};
    app.require_subcommand(1);

    // ---- wittcalc ----
    auto* wc = app.add_subcommand("wittcalc", "truncated big Witt vector calculator");
    std::string wc_op, wc_ring = "z", wc_x, wc_y;
    long wc_m = 2, wc_k = 1, wc_n = 0;
    wc->add_option("op", wc_op, "add|mul|ghost|frob|versch|teich|decompose")->required();
    wc->add_option("--ring", wc_ring, "coefficient ring spec");
    wc->add_option("--m", wc_m, "truncation level")->required();
    wc->add_option("--x", wc_x, "first operand")->required();
    wc->add_option("--y", wc_y, "second operand");
    wc->add_option("--k", wc_k, "Frobenius/Verschiebung index");
    wc->add_option("--n", wc_n, "ghost component");

    // ---- qwitt ----
    auto* qw = app.add_subcommand("qwitt", "q-Witt vector rings");
    auto* qw_present = qw->add_subcommand("present", "build a presented qW_m(R)");
    std::string qp_ring = "zmod:2", qp_emit = "text";
    long qp_m = 2;
    qw_present->add_option("--ring", qp_ring, "finite coefficient ring spec")->required();
    qw_present->add_option("--m", qp_m, "truncation level")->required();
    qw_present->add_option("--emit", qp_emit, "text|json");
    auto* qw_cmap = qw->add_subcommand("cmap", "comparison map c_m on the lambda model");
    std::string qc_lambda = "z", qc_elem;
    long qc_m = 2;
    qw_cmap->add_option("--m", qc_m)->required();
    qw_cmap->add_option("--lambda", qc_lambda, "z|polyT");
    qw_cmap->add_option("--element", qc_elem, "Witt vector, e.g. \"(2, -1)\"")->required();

    // ---- qhodge ----
    auto* qh = app.add_subcommand("qhodge", "q-Hodge cohomology");
    auto* qh_coh = qh->add_subcommand("cohomology", "per-multidegree cohomology tables");
    long qh_m = 2, qh_p = 0, qh_alpha = 1, qh_prec = 8;
    int qh_vars = 1, qh_maxdeg = 12;
    std::string qh_emit = "json", qh_out;
    qh_coh->add_option("--m", qh_m, "modulus q^m-1");
    qh_coh->add_option("--vars", qh_vars, "number of variables");
    qh_coh->add_option("--maxdeg", qh_maxdeg, "multidegree bound");
    qh_coh->add_option("--p", qh_p, "prime for p-local computation");
    qh_coh->add_option("--alpha", qh_alpha, "p-power exponent");
    qh_coh->add_option("--prec", qh_prec, "p-adic precision exponent");
    qh_coh->add_option("--emit", qh_emit, "json|csv");
    qh_coh->add_option("--out", qh_out, "output path");

    // ---- qdrw verify / top-level verify ----
    SuiteConfig cfg;
    std::string cfg_m = "2", cfg_rings = "zmod:2";
    auto add_suite_opts = [&](CLI::App* cmd, bool named_suite) {
        static std::string suite_one;
        if (named_suite)
            cmd->add_option("--suite", suite_one, "suite name")->required();
        else
            cmd->add_option("--suite", cfg.suites, "suites to run")->delimiter(',');
        cmd->add_option("--m", cfg_m, "truncation levels, comma separated");
        cmd->add_option("--ring", cfg_rings, "ring specs, comma separated");
        cmd->add_option("--vars", cfg.vars, "number of variables");
        cmd->add_option("--maxdeg", cfg.maxdeg, "multidegree bound");
        cmd->add_option("--prec-q", cfg.prec_q, "(q-1)-adic precision exponent");
        cmd->add_option("--prec-p", cfg.prec_p, "p-adic precision exponent");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--trials", cfg.trials, "random trials per property");
        cmd->add_option("--jobs", cfg.jobs, "worker threads");
        cmd->add_option("--emit", cfg.emit, "text|json|csv");
        cmd->add_option("--out", cfg.out, "output path");
        cmd->add_flag("--timings", cfg.timings, "record runtimes (breaks byte-determinism)");
        return &suite_one;
    };
    auto* qd = app.add_subcommand("qdrw", "cohomological model of q-de Rham-Witt complexes");
    auto* qd_verify = qd->add_subcommand("verify", "run a model verification suite");
    std::string* qd_suite = add_suite_opts(qd_verify, true);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_suite_opts(verify, false);
    std::string cfg_file;
    verify->add_option("--config", cfg_file, "JSON config file; flags win");

    // ---- golden ----
    auto* golden = app.add_subcommand("golden", "golden value management");
    std::string golden_path = "tests/golden/golden.json";
    bool golden_update = false, golden_force = false;
    golden->add_option("--path", golden_path, "golden file location");
    golden->add_flag("--update", golden_update, "write the recomputed values");
    golden->add_flag("--force", golden_force, "overwrite on mismatch");

    CLI11_PARSE(app, argc, argv);

    try {
        if (wc->parsed())
            return run_wittcalc(wc_op, wc_ring, wc_m, wc_x, wc_y, wc_k, wc_n);
        if (qw_present->parsed()) return run_present(qp_ring, qp_m, qp_emit);
        if (qw_cmap->parsed()) return run_cmap(qc_m, qc_lambda, qc_elem);
        if (qh_coh->parsed())
            return run_qhodge(qh_m, qh_vars, qh_maxdeg, qh_p, qh_alpha, qh_prec, qh_emit,
                              qh_out);
        if (qd_verify->parsed() || verify->parsed()) {
            if (!cfg_file.empty()) {
                std::ifstream in(cfg_file);
                if (!in) throw std::runtime_error("cannot read config " + cfg_file);
                ordered_json j = ordered_json::parse(in);
                // flags win: only fill fields still at their defaults
                if (cfg.suites.empty() && j.contains("suites"))
                    cfg.suites = j["suites"].get<std::vector<std::string>>();
                if (cfg_m == "2" && j.contains("m")) {
                    cfg_m.clear();
                    for (auto& x : j["m"]) cfg_m += (cfg_m.empty() ? "" : ",") +
                                                    std::to_string(x.get<long>());
                }
                if (cfg_rings == "zmod:2" && j.contains("rings")) {
                    cfg_rings.clear();
                    for (auto& x : j["rings"])
                        cfg_rings += (cfg_rings.empty() ? "" : ",") + x.get<std::string>();
                }
                if (j.contains("seed") && cfg.seed == 1) cfg.seed = j["seed"].get<uint64_t>();
            }
            if (qd_verify->parsed()) cfg.suites = {*qd_suite};
            cfg.ms = parse_m_list(cfg_m);
            cfg.rings.clear();
            {
                size_t pos = 0;
                while (pos <= cfg_rings.size()) {
                    size_t k = cfg_rings.find(',', pos);
                    std::string piece = k == std::string::npos ? cfg_rings.substr(pos)
                                                               : cfg_rings.substr(pos, k - pos);
                    if (!piece.empty()) cfg.rings.push_back(piece);
                    if (k == std::string::npos) break;
                    pos = k + 1;
                }
            }
            Report rep = run_suites(cfg);
            write_out(cfg.out, rep.render());
            return exit_code_for(rep);
        }
        if (golden->parsed()) {
            GoldenDiff d = golden_compare(golden_path);
            if (!d.file_existed) {
                if (golden_update) {
                    golden_write(golden_path);
                    std::cout << "golden file created: " << golden_path << "\n";
                    return 0;
                }
                std::cout << "no golden file at " << golden_path << " (use --update)\n";
                return 1;
            }
            if (d.matches) {
                std::cout << "golden values match\n";
                return 0;
            }
            std::cout << "golden mismatch:\n" << d.diff;
            if (golden_update && golden_force) {
                golden_write(golden_path);
                std::cout << "golden file overwritten\n";
                return 0;
            }
            if (golden_update) std::cout << "refusing to overwrite without --force\n";
            return 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        // inexact division and similar integrality violations signal bugs
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
