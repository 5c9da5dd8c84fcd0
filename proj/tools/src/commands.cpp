#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "fcss/distance.hpp"
#include "fcss/error.hpp"
#include "fcss/gates.hpp"
#include "fcss/homology.hpp"

namespace fcss::cli {

namespace {

constexpr int kExitGateFailure = 4;

// stdout unless --out names a file
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ValidationError("cannot write " + path);
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }
    bool to_stdout() const { return !file_; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

CLI::App* subcommand(CLI::App& app, const char* name, const char* help, CommonArgs& args, bool geometry = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (geometry) add_geometry_flags(*sub, args.geom);
    sub->add_option("--out", args.out, "output file (default stdout)");
    sub->add_option("--seed", args.seed, "accepted for reproducible pipelines; all commands are deterministic");
    sub->add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);
    return sub;
}

// Shared state for the callbacks; CLI11 keeps references into it.
template <class T>
T& keep() {
    static std::vector<std::unique_ptr<T>> pool;
    pool.push_back(std::make_unique<T>());
    return *pool.back();
}

PauliType parse_type(const std::string& s) {
    if (s == "X" || s == "x") return PauliType::X;
    if (s == "Z" || s == "z") return PauliType::Z;
    throw ValidationError("Pauli type must be X or Z");
}

// auto: the graph algorithm when its preconditions hold, else exhaustive search.
DistanceResult distance_of(const CssCode& code, PauliType type, const std::string& method, std::size_t w_max) {
    if (method == "exhaustive") return exhaustive_low_weight(code, type, w_max);
    if (method == "bfs") {
        if (type != PauliType::Z) throw ValidationError("bfs computes d_Z only");
        return dz_shortest_path(code);
    }
    if (method == "mincut") {
        if (type != PauliType::X) throw ValidationError("mincut computes d_X only");
        return dx_min_cut(code);
    }
    if (method != "auto") throw ValidationError("unknown distance method " + method);
    if (code.source()) {
        try {
            return type == PauliType::Z ? dz_shortest_path(code) : dx_min_cut(code);
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const ValidationError&) {
            // outside the graph algorithm's scope
        }
    }
    return exhaustive_low_weight(code, type, w_max);
}

std::size_t hole_count(const GeometryArgs& g) {
    const FractalSpec s = to_spec(g);
    return fractal_holes(s.n, s.p, s.q, s.level, s.unit).size();
}

void write_betti_line(std::ostream& os, const char* name, const BettiResult& b) {
    os << name << '=' << b.value;
    if (b.reduced_caveat) os << " (unreduced; H_0(L,B) is one less)";
    os << '\n';
}

LabelSet parse_relative(const std::string& s) {
    if (s == "none") return {};
    if (s == "e") return LabelSet::e_labels();
    if (s == "m") return LabelSet::m_labels();
    if (s == "outer") return LabelSet::outer();
    if (s == "all") return LabelSet::all_boundary();
    throw ValidationError("--relative must be none, e, m, outer or all");
}

}  // namespace

void register_gen(CLI::App& app, int& status) {
    auto& a = keep<CommonArgs>();
    CLI::App* sub = subcommand(app, "gen", "build a (fractal) cell complex", a);
    sub->callback([&a, &status] {
        const FractalSpec spec = to_spec(a.geom);
        const CellComplex c = build_fractal(spec);
        Output out(a.out);
        // with the complex on stdout the summary moves to stderr
        std::ostream& info = out.to_stdout() ? std::cerr : std::cout;
        info << "side=" << spec.side() << " holes=" << fractal_holes(spec.n, spec.p, spec.q, spec.level, spec.unit).size()
             << '\n';
        info << "cells";
        for (int k = 0; k <= c.dim(); ++k) info << ' ' << c.count(k);
        info << '\n';
        info << "D_H=" << fixed(hausdorff_dimension(spec.n, spec.p, spec.p - spec.q), 4) << '\n';
        write_complex(out.get(), c);
        status = 0;
    });
}

void register_code(CLI::App& app, int& status) {
    auto& a = keep<CommonArgs>();
    CLI::App* sub = subcommand(app, "code", "CSS code from a complex (--in) or from geometry flags", a);
    sub->add_option("--in", a.in, "cellcomplex file, - for stdin");
    sub->callback([&a, &status] {
        const CssCode code = load_code(a.in, a.geom);
        Output out(a.out);
        write_code(out.get(), code);
        status = 0;
    });
}

void register_params(CLI::App& app, int& status) {
    auto& a = keep<CommonArgs>();
    CLI::App* sub = subcommand(app, "params", "qubit and logical counts with the homology cross-check", a);
    sub->add_option("--in", a.in, "cellcomplex or csscode file, - for stdin");
    sub->callback([&a, &status] {
        const CssCode code = load_code(a.in, a.geom);
        const CodeParams p = code_params(code, static_cast<bool>(code.source()));
        Output out(a.out);
        out.get() << "n=" << p.n_qubits << " k=" << p.k << " x_checks=" << code.hx_rows().rows()
                  << " z_checks=" << code.hz_rows().rows() << " isolated=" << code.isolated_count()
                  << " homology_check=" << (code.source() ? "ok" : "skipped") << '\n';
        status = 0;
    });
}

void register_distance(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        std::string type = "both";
        std::string method = "auto";
        std::size_t w_max = 4;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "distance", "d_Z / d_X by path search, min-cut or enumeration", a);
    sub->add_option("--in", a.in, "cellcomplex or csscode file, - for stdin");
    sub->add_option("--type", a.type, "X, Z or both")->check(CLI::IsMember({"X", "Z", "x", "z", "both"}));
    sub->add_option("--method", a.method, "auto, bfs, mincut or exhaustive")
        ->check(CLI::IsMember({"auto", "bfs", "mincut", "exhaustive"}));
    sub->add_option("--w-max", a.w_max, "largest weight tried by exhaustive search");
    sub->callback([&a, &status] {
        const CssCode code = load_code(a.in, a.geom);
        Output out(a.out);
        std::vector<PauliType> types;
        if (a.type == "both")
            types = {PauliType::Z, PauliType::X};
        else
            types = {parse_type(a.type)};
        for (PauliType t : types) {
            const DistanceResult r = distance_of(code, t, a.method, a.w_max);
            out.get() << (t == PauliType::Z ? "dz=" : "dx=") << r.value << " kind=" << describe(r);
            if (r.kind != DistanceKind::CertifiedAbove) out.get() << " witness_weight=" << r.witness.weight();
            out.get() << '\n';
        }
        status = 0;
    });
}

void register_homology(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        int grade = -1;
        std::string relative = "e";
        bool lefschetz = false;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "homology", "(relative) Betti numbers over Z2", a);
    sub->add_option("--in", a.in, "cellcomplex file, - for stdin");
    sub->add_option("--grade", a.grade, "homology degree (default --i)");
    sub->add_option("--relative", a.relative, "none, e, m, outer or all");
    sub->add_flag("--lefschetz", a.lefschetz, "also check the duality against cohomology relative to the M boundary (primal cellulation)");
    sub->callback([&a, &status] {
        const auto c = load_complex(a.in, a.geom);
        const int grade = a.grade >= 0 ? a.grade : a.geom.i;
        const HomologyRequest req{*c, grade, parse_relative(a.relative)};
        Output out(a.out);
        write_betti_line(out.get(), "betti", betti(req));
        write_betti_line(out.get(), "cobetti", cobetti(req));
        out.get() << "euler=" << c->euler_characteristic() << '\n';
        if (a.lefschetz) {
            const LefschetzReport r = verify_lefschetz(*c, grade, LabelSet::e_labels(), LabelSet::m_labels());
            out.get() << "lefschetz lhs=" << r.lhs << " rhs=" << r.rhs << ' ' << (r.equal ? "PASS" : "FAIL") << '\n';
            if (!r.equal) status = 1;
        }
    });
}

void register_gate_check(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        std::string op;
        bool vb = false;
        int L = 2;
        std::string hole;
        bool colorcode = false;
        bool commutation = false;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "gate-check", "transversal CZ / CCZ / S conditions", a);
    sub->add_option("op", a.op, "cz, ccz or s")->required()->check(CLI::IsMember({"cz", "ccz", "s"}));
    sub->add_flag("--vb", a.vb, "three-copy cubic stack (ccz)");
    sub->add_option("--L", a.L, "stack or patch size");
    sub->add_option("--hole", a.hole, "center: one unit (m,m,m)-hole in the middle of the stack");
    sub->add_flag("--colorcode", a.colorcode, "2D hexagonal color code (s)");
    sub->add_flag("--commutation", a.commutation, "also check that the CCZ-conjugated stabilizers commute");
    sub->callback([&a, &status] {
        Output out(a.out);
        GateCheckReport rep;
        if (a.op == "cz") {
            if (a.vb || a.colorcode) throw ValidationError("cz takes geometry flags only");
            // the partner block is the same lattice with X and Z exchanged
            const CssCode code = load_code("", a.geom);
            const CssCode partner = code.swapped();
            rep = check_transversal_cz(code, partner, StackAlignment::identity(code.n_qubits(), 2));
        } else if (a.op == "ccz") {
            if (!a.vb) throw ValidationError("ccz needs --vb");
            std::vector<HoleBox> holes;
            if (!a.hole.empty()) {
                if (a.hole != "center") throw ValidationError("--hole accepts only `center`");
                if (a.L % 2 == 0) throw ValidationError("a centered unit hole needs odd L");
                HoleBox h;
                for (std::size_t ax = 0; ax < 3; ++ax) {
                    h.lo[ax] = (a.L - 1) / 2;
                    h.hi[ax] = h.lo[ax] + 1;
                }
                holes.push_back(h);
            }
            const VasmerBrowneStack st = build_vasmer_browne_stack(a.L, holes);
            const CczStack stack(st.codes[0], st.codes[1], st.codes[2], st.align);
            rep = stack.check();
            if (a.commutation) {
                const auto ops = stack.conjugated_stabilizers();
                const CommutationReport cr = check_pairwise_commutation(ops);
                std::size_t not_identity = 0;
                for (const auto& o : ops) not_identity += !o.logical_identity;
                out.get() << "COMMUTATION operators=" << cr.operators << " pairs=" << cr.pairs_checked
                          << " failures=" << cr.failures << " non_identity_cz=" << not_identity << '\n';
                if (cr.failures) status = kExitGateFailure;
            }
        } else {
            if (!a.colorcode) throw ValidationError("s needs --colorcode");
            rep = check_transversal_s_colorcode(build_color_code_2d(a.L));
        }
        write_report(out.get(), rep);
        if (!rep.passed()) status = kExitGateFailure;
    });
}

void register_merge(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        int axis = -1;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "merge", "glue two copies of a code along a rough face", a);
    sub->add_option("--axis", a.axis, "gluing axis (default: first rough axis)");
    sub->callback([&a, &status] {
        const auto c = load_complex("", a.geom);
        const CssCode code = css_from_complex(c, a.geom.i);
        int axis = a.axis;
        if (axis < 0) {
            const std::uint8_t e = to_spec(a.geom).e_axes;
            axis = a.geom.dim - 1;
            for (int ax = 0; ax < a.geom.dim && e; ++ax)
                if ((e >> ax) & 1U) {
                    axis = ax;
                    break;
                }
        }
        const MergeResult m = merge_rough(code, code, rough_interface(*c, *c, axis));
        Output out(a.out);
        out.get() << "k_a=" << m.k_a << " k_b=" << m.k_b << " k_merged=" << m.k_merged << " n_merged="
                  << m.merged.n_qubits() << " interface_qubits=" << m.interface_qubits.size()
                  << " interface_x_checks=" << m.interface_x_checks.size()
                  << " parity_identity=" << (m.parity_identity ? "PASS" : "FAIL") << '\n';
        status = m.parity_identity && m.k_merged + 1 == m.k_a + m.k_b ? 0 : 1;
    });
}

void register_scan(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        int level_min = 1;
        int level_max = 2;
        std::string dz = "auto";
        std::string dx = "auto";
        std::size_t w_max = 4;
        bool no_timing = false;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "scan", "CSV of n, k, d_Z, d_X over a range of levels", a);
    sub->add_option("--level-min", a.level_min, "first level");
    sub->add_option("--level-max", a.level_max, "last level");
    sub->add_option("--dz", a.dz, "auto, bfs, exhaustive or none")
        ->check(CLI::IsMember({"auto", "bfs", "exhaustive", "none"}));
    sub->add_option("--dx", a.dx, "auto, mincut, exhaustive or none")
        ->check(CLI::IsMember({"auto", "mincut", "exhaustive", "none"}));
    sub->add_option("--w-max", a.w_max, "largest weight tried by exhaustive search");
    sub->add_flag("--no-timing", a.no_timing, "write 0 in the seconds column (byte-identical reruns)");
    sub->callback([&a, &status] {
        if (a.level_min > a.level_max || a.level_min < 0) throw ValidationError("empty level range");
        auto row = [&a](int level) {
            const auto t0 = std::chrono::steady_clock::now();
            GeometryArgs g = a.geom;
            g.level = level;
            try {
                const FractalSpec spec = to_spec(g);
                const CssCode code = css_from_complex(std::make_shared<const CellComplex>(build_fractal(spec)), g.i);
                const CodeParams p = code_params(code);
                auto cell = [&](const std::string& method, PauliType t) -> std::string {
                    if (method == "none" || p.k == 0) return "-,none";
                    const DistanceResult r = distance_of(code, t, method, a.w_max);
                    return std::to_string(r.value) + "," + to_string(r.kind);
                };
                const std::string dz = cell(a.dz, PauliType::Z);
                const std::string dx = cell(a.dx, PauliType::X);
                const double secs =
                    a.no_timing ? 0.0 : std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                std::ostringstream os;
                os << p.n_qubits << ',' << g.p << ',' << g.q << ',' << level << ',' << spec.side() << ',' << p.k << ','
                   << dz << ',' << dx << ',' << fixed(secs, 3) << '\n';
                return os.str();
            } catch (const BudgetExceeded& e) {
                throw BudgetExceeded(e.budget(), "level " + std::to_string(level) + ": " + e.what());
            } catch (const ValidationError& e) {
                throw ValidationError("level " + std::to_string(level) + ": " + e.what());
            }
        };
        std::vector<int> levels;
        for (int l = a.level_min; l <= a.level_max; ++l) levels.push_back(l);
        std::vector<std::string> rows(levels.size());
        const std::size_t width = static_cast<std::size_t>(a.threads);
        for (std::size_t start = 0; start < levels.size(); start += width) {
            std::vector<std::future<std::string>> batch;
            for (std::size_t j = start; j < std::min(levels.size(), start + width); ++j)
                batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, row, levels[j]));
            for (std::size_t j = 0; j < batch.size(); ++j) rows[start + j] = batch[j].get();
        }
        Output out(a.out);
        out.get() << "n,p,q,level,L,k,dz,dz_kind,dx,dx_kind,seconds\n";
        for (const auto& r : rows) out.get() << r;
        status = 0;
    });
}

void register_table1(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        bool fit = false;
        int fit_levels = 2;
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "table1", "Hausdorff dimensions and d_X exponents", a, false);
    sub->add_flag("--fit", a.fit, "also measure d_Z, d_X at levels 1.. for the buildable rows and fit the exponent");
    sub->add_option("--fit-levels", a.fit_levels, "deepest level used by --fit")->check(CLI::Range(2, 3));
    sub->callback([&a, &status] {
        Output out(a.out);
        out.get() << "family,D_H,dx_exponent";
        if (a.fit) out.get() << ",dz_levels,dx_levels,fit_dx_exponent,abs_deviation";
        out.get() << '\n';
        for (const auto& e : table1_entries()) {
            out.get() << e.name << ',' << fixed(e.d_h, 3) << ',' << fixed(e.dx_exp, 3);
            if (a.fit) {
                if (e.p == 0) {
                    out.get() << ",,,,";
                } else {
                    std::vector<std::pair<double, double>> pts;
                    std::string dzs, dxs;
                    for (int level = 1; level <= a.fit_levels; ++level) {
                        FractalSpec s;
                        s.p = e.p;
                        s.q = e.q;
                        s.level = level;
                        s.cellulation = Cellulation::Adapted;
                        const CssCode code = css_from_complex(std::make_shared<const CellComplex>(build_fractal(s)), 1);
                        const DistanceResult dx = dx_min_cut(code);
                        const DistanceResult dz = dz_shortest_path(code);
                        pts.emplace_back(s.side(), static_cast<double>(dx.value));
                        dzs += (dzs.empty() ? "" : " ") + std::to_string(dz.value);
                        dxs += (dxs.empty() ? "" : " ") + std::to_string(dx.value);
                    }
                    const ScalingFit fit = fit_scaling(pts);
                    out.get() << ',' << dzs << ',' << dxs << ',' << fixed(fit.exponent, 4) << ','
                              << fixed(std::abs(fit.exponent - e.dx_exp), 4);
                }
            }
            out.get() << '\n';
        }
        status = 0;
    });
}

void register_export(CLI::App& app, int& status) {
    struct Args : CommonArgs {
        std::string dir = "fractalcss-export";
    };
    auto& a = keep<Args>();
    CLI::App* sub = subcommand(app, "export", "write complex, code, check matrices and parameters to a directory", a);
    sub->add_option("--dir", a.dir, "output directory");
    sub->callback([&a, &status] {
        namespace fs = std::filesystem;
        const auto c = load_complex("", a.geom);
        const CssCode code = css_from_complex(c, a.geom.i);
        fs::create_directories(a.dir);
        auto open = [&](const char* name) {
            std::ofstream f(fs::path(a.dir) / name);
            if (!f) throw ValidationError("cannot write " + (fs::path(a.dir) / name).string());
            return f;
        };
        {
            auto f = open("complex.txt");
            write_complex(f, *c);
        }
        {
            auto f = open("code.txt");
            write_code(f, code);
        }
        {
            auto f = open("hx.txt");
            write_matrix(f, code.hx());
        }
        {
            auto f = open("hz.txt");
            write_matrix(f, code.hz());
        }
        const CodeParams p = code_params(code);
        {
            auto f = open("params.txt");
            f << "n=" << p.n_qubits << " k=" << p.k << " holes=" << hole_count(a.geom) << '\n';
        }
        Output out(a.out);
        out.get() << "wrote " << a.dir << " (n=" << p.n_qubits << " k=" << p.k << ")\n";
        status = 0;
    });
}

}  // namespace fcss::cli
