// qgs: scattering matrices, bound states, and tail surgery for continuous-time
// quantum walks on finite graphs with semi-infinite tails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qgs/qgs.hpp>

using namespace qgs;

namespace {

// ---- input helpers ---------------------------------------------------------

std::string read_document(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TailedGraph load_graph(const std::string& path) { return parse_graph(read_document(path)); }

// Accepts "a", "bi", "a+bi", "a-bi" (also bare "i" / "-i").
Complex parse_complex(std::string s) {
    std::erase(s, ' ');
    if (s.empty()) throw InputError("empty complex literal");
    try {
        if (s.back() != 'i') return Complex(std::stod(s), 0.0);
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t pos = s.size(); pos-- > 1;) {
            if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
                split = pos;
                break;
            }
        }
        auto imag_part = [](const std::string& t) {
            if (t.empty() || t == "+") return 1.0;
            if (t == "-") return -1.0;
            return std::stod(t);
        };
        if (split == std::string::npos) return Complex(0.0, imag_part(s));
        return Complex(std::stod(s.substr(0, split)), imag_part(s.substr(split)));
    } catch (const std::exception&) {
        throw InputError("cannot parse complex number: " + s);
    }
}

struct MomentumSpec {
    double k = std::numeric_limits<double>::quiet_NaN();
    std::string z_text;

    Momentum resolve() const {
        const bool has_k = !std::isnan(k);
        const bool has_z = !z_text.empty();
        if (has_k == has_z) throw InputError("provide exactly one of --k or --z");
        return has_k ? Momentum::from_k(k) : Momentum::from_z(parse_complex(z_text));
    }
};

struct KRange {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
};

KRange parse_k_range(const std::string& text) {
    KRange r;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw InputError("k-range must be a:b:n");
    try {
        r.lo = std::stod(text.substr(0, c1));
        r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.steps = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw InputError("cannot parse k-range: " + text);
    }
    if (r.steps < 1) throw InputError("k-range needs at least one step");
    if (!(r.lo < r.hi) && r.steps > 1) throw InputError("k-range must have a < b");
    const double margin = 1e-9;
    if (r.lo <= margin || r.hi >= M_PI - margin)
        throw InputError("k-range must stay inside (0, pi), away from the edge momenta");
    return r;
}

// ---- output helpers --------------------------------------------------------

std::string fmt_sig(double x, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string fmt_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_complex(Complex c, int digits = 12) {
    const std::string re = fmt_sig(c.real(), digits);
    const std::string im = fmt_sig(std::abs(c.imag()), digits);
    return re + (c.imag() < 0 ? "-" : "+") + im + "i";
}

nlohmann::ordered_json complex_json(Complex c) {
    return {{"re", c.real()}, {"im", c.imag()}};
}

bool pencil_singular_at(const TailedGraph& g, const Momentum& z, const ToleranceConfig& tol) {
    const auto k = kernel_projector(g, z, tol);
    double trace = 0.0;
    for (std::size_t i = 0; i < k.rows(); ++i) trace += k(i, i).real();
    return trace > 0.5;
}

void render_smatrix(const SMatrix& s, const TailedGraph& g, const std::string& format,
                    const ToleranceConfig& tol) {
    const bool singular = pencil_singular_at(g, s.momentum(), tol);
    if (format == "csv") {
        std::cout << "row,col,re,im\n";
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j)
                std::cout << i << ',' << j << ',' << fmt_full(s(i, j).real()) << ','
                          << fmt_full(s(i, j).imag()) << '\n';
        return;
    }
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["k"] = s.momentum().k();
        doc["z"] = complex_json(s.momentum().z());
        doc["labels"] = nlohmann::ordered_json::array();
        for (const auto& l : s.labels()) doc["labels"].push_back(l.str());
        doc["entries"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            auto row = nlohmann::ordered_json::array();
            for (std::size_t j = 0; j < s.dim(); ++j) row.push_back(complex_json(s(i, j)));
            doc["entries"].push_back(row);
        }
        doc["unitarity_residual"] = check_unitarity(s);
        doc["singular_momentum"] = singular;
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::cout << "S-matrix at k = " << fmt_sig(s.momentum().k()) << " (z = "
              << fmt_complex(s.momentum().z()) << ")\n";
    if (singular)
        std::cout << "note: pencil singular at this momentum; pseudo-inverse branch used\n";
    if (s.dim() == 0) {
        std::cout << "(empty: no tails remain)\n";
        return;
    }
    auto pad = [](const std::string& text, std::size_t width) {
        return text + std::string(width > text.size() ? width - text.size() : 1, ' ');
    };
    std::cout << pad("", 10);
    for (const auto& l : s.labels()) std::cout << pad(l.str(), 30);
    std::cout << '\n';
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::cout << pad(s.labels()[i].str(), 10);
        for (std::size_t j = 0; j < s.dim(); ++j) std::cout << pad(fmt_complex(s(i, j)), 30);
        std::cout << '\n';
    }
    std::cout << "unitarity residual: " << fmt_sig(check_unitarity(s), 3) << '\n';
}

const char* kind_name(BoundKind k) { return k == BoundKind::First ? "first" : "second"; }

void render_bound(const TailedGraph& g, const std::string& format, const ToleranceConfig& tol) {
    const auto first =
        g.tail_count() > 0 ? find_first_kind(g, tol) : std::vector<BoundState>{};
    const auto second = find_second_kind(g, tol);
    const auto spectrum = bound_spectrum(g, tol);
    if (format == "csv") {
        std::cout << "kind,z_b,energy,norm_factor";
        for (const auto& l : g.tail_labels()) std::cout << ",alpha_" << l.str();
        std::cout << '\n';
        auto row = [&](const BoundState& b) {
            std::cout << kind_name(b.kind) << ','
                      << (b.kind == BoundKind::First ? fmt_full(b.z_b) : "") << ','
                      << fmt_full(b.energy) << ','
                      << (b.kind == BoundKind::First ? fmt_full(b.norm_factor) : "");
            for (double a : b.alpha) std::cout << ',' << fmt_full(a);
            std::cout << '\n';
        };
        for (const auto& b : first) row(b);
        for (const auto& b : second) row(b);
        return;
    }
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["states"] = nlohmann::ordered_json::array();
        auto add = [&](const BoundState& b) {
            nlohmann::ordered_json e;
            e["kind"] = kind_name(b.kind);
            if (b.kind == BoundKind::First) {
                e["z_b"] = b.z_b;
                e["norm_factor"] = b.norm_factor;
            }
            e["energy"] = b.energy;
            e["graph_part"] = b.graph_part;
            e["alpha"] = b.alpha;
            doc["states"].push_back(e);
        };
        for (const auto& b : first) add(b);
        for (const auto& b : second) add(b);
        doc["spectrum"] = nlohmann::ordered_json::array();
        for (const auto& line : spectrum)
            doc["spectrum"].push_back({{"energy", line.energy},
                                       {"kind", kind_name(line.kind)},
                                       {"degeneracy", line.degeneracy}});
        std::cout << doc.dump(2) << '\n';
        return;
    }
    if (first.empty() && second.empty()) {
        std::cout << "none\n";
        return;
    }
    for (const auto& b : first) {
        std::cout << "first kind   z_b = " << fmt_sig(b.z_b) << "   E = " << fmt_sig(b.energy)
                  << "   |N|^2 = " << fmt_sig(b.norm_factor) << "   alpha =";
        for (double a : b.alpha) std::cout << ' ' << fmt_sig(a, 6);
        std::cout << '\n';
    }
    for (const auto& b : second)
        std::cout << "second kind  E = " << fmt_sig(b.energy) << "   (zero on all tails)\n";
    std::cout << "spectrum:\n";
    for (const auto& line : spectrum)
        std::cout << "  E = " << fmt_sig(line.energy) << "   " << kind_name(line.kind)
                  << " kind, degeneracy " << line.degeneracy << '\n';
}

// ---- verify ----------------------------------------------------------------

struct VerifyReport {
    bool ok = true;
    int checks = 0;

    void line(const std::string& name, double value, double threshold) {
        const bool pass = value < threshold;
        ok = ok && pass;
        ++checks;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  (" << fmt_sig(value, 3)
                  << " vs " << fmt_sig(threshold, 3) << ")\n";
    }
};

void verify_graph(const TailedGraph& g, const std::string& level, const ToleranceConfig& tol) {
    VerifyReport rep;
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> kdist(1e-3, M_PI - 1e-3);

    if (g.tail_count() > 0) {
        double worst_u = 0.0, worst_tr = 0.0, worst_def = 0.0, worst_amp = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const auto zm = Momentum::from_k(kdist(rng));
            worst_u = std::max(worst_u, check_unitarity(s_matrix(g, zm, tol)));
            worst_tr = std::max(worst_tr, check_time_reversal(g, zm, tol));
            for (int t = 0; t < g.tail_count(); ++t) {
                const auto st = propagating_state(g, zm, t, tol);
                const auto a = pencil_matrix(g, zm.z());
                ComplexVector r = a * st.graph_part();
                r[static_cast<std::size_t>(g.attachment_vertex(t))] -= 1.0 - zm.z() * zm.z();
                worst_def = std::max(worst_def, max_abs(r));
                for (int tp = 0; tp < g.tail_count(); ++tp)
                    worst_amp = std::max(worst_amp,
                                         std::abs(st.tail_amplitude(tp, 0) -
                                                  st.value_at_vertex(g.attachment_vertex(tp))));
            }
        }
        rep.line("unitarity over random momenta", worst_u, tol.residual_tol);
        rep.line("time-reversal symmetry", worst_tr, tol.residual_tol);
        rep.line("propagating-state defining residual", worst_def, tol.residual_tol);
        rep.line("tail amplitude matches attachment vertex", worst_amp, tol.residual_tol);

        // surgery spot checks
        const auto zm = Momentum::from_k(1.1);
        const auto s = s_matrix(g, zm, tol);
        try {
            const auto round_trip = cut_tail(attach_tail(s, 0), static_cast<int>(s.dim()));
            rep.line("attach then cut is the identity", max_abs(round_trip.entries() - s.entries()),
                     1e-10);
        } catch (const ResonantDenominatorError&) {
            std::cout << "SKIP  attach/cut round trip (resonant denominator)\n";
        }
        if (g.tail_count() >= 2) {
            try {
                const auto block = cut_tails_block(s, {0, 1});
                const auto iter = cut_tail(cut_tail(s, 1), 0);
                rep.line("block cut equals iterated cuts",
                         max_abs(block.entries() - iter.entries()), 1e-10);
                const auto joined = connect_tails(s, 0, 1);
                const auto rebuilt = s_matrix(connect_tails_in_graph(g, 0, 1), zm, tol);
                rep.line("connection matches rebuilt graph",
                         max_abs(joined.entries() - rebuilt.entries()), tol.residual_tol);
            } catch (const ResonantDenominatorError&) {
                std::cout << "SKIP  block/connect checks (resonant denominator)\n";
            }
        }
    }

    double worst_first = 0.0, worst_norm = 0.0;
    for (const auto& b : find_first_kind(g, tol)) {
        const auto a = pencil_matrix(g, Complex(b.z_b, 0.0));
        worst_first = std::max(worst_first, max_abs(a * to_complex(b.graph_part)));
        double norm = 0.0;
        for (double x : b.graph_part) norm += x * x;
        for (double al : b.alpha) norm += al * al * b.z_b * b.z_b / (1.0 - b.z_b * b.z_b);
        worst_norm = std::max(worst_norm, std::abs(b.norm_factor * norm - 1.0));
    }
    rep.line("first-kind kernel residual", worst_first, tol.residual_tol);
    rep.line("first-kind full normalization", worst_norm, tol.residual_tol);

    double worst_second = 0.0;
    const auto h = build_hamiltonian(g);
    for (const auto& b : find_second_kind(g, tol)) {
        RealVector r = h * b.graph_part;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.energy * b.graph_part[i];
        worst_second = std::max(worst_second, max_abs(r));
        for (int v : g.tailed_vertices())
            worst_second = std::max(worst_second, std::abs(b.graph_part[static_cast<std::size_t>(v)]));
    }
    rep.line("second-kind eigen residual and attachment amplitudes", worst_second,
             tol.residual_tol);

    if (level == "full" && g.tail_count() > 0) {
        double worst_id = 0.0;
        for (int trial = 0; trial < 5; ++trial)
            worst_id = std::max(worst_id,
                                scattering_identity_residual(g, Momentum::from_k(kdist(rng)), tol));
        // singular momenta from the second-kind spectrum, pseudo-inverse branch
        for (const auto& b : find_second_kind(g, tol)) {
            if (std::abs(b.energy) >= 2.0 - 1e-9) continue;
            const auto zm = Momentum::from_k(std::acos(-b.energy / 2.0));
            rep.line("unitarity at singular momentum", check_unitarity(s_matrix(g, zm, tol)),
                     tol.residual_tol);
            const auto kproj = kernel_projector(g, zm, tol);
            const auto a = pencil_matrix(g, zm.z());
            double ann = std::max(max_abs(a * kproj), max_abs(kproj * a));
            for (int v : g.tailed_vertices())
                for (std::size_t i = 0; i < kproj.rows(); ++i)
                    ann = std::max(ann, std::abs(kproj(i, static_cast<std::size_t>(v))));
            rep.line("kernel projector annihilation", ann, 1e-10);
            worst_id = std::max(worst_id, scattering_identity_residual(g, zm, tol));
        }
        rep.line("incoming-basis scattering identity", worst_id, tol.residual_tol);

        const auto site = Site::tail(g, 0, 1);
        rep.line("spectral completeness at a tail site",
                 std::abs(completeness_residual(g, site, site, {}, tol)), 1e-5);
    }

    std::cout << (rep.ok ? "verify: all checks passed" : "verify: FAILURES detected") << " ("
              << rep.checks << " checks)\n";
    if (!rep.ok) throw NumericError("verification failed");
}

void render_info(const TailedGraph& g, const std::string& format) {
    const auto d = validate(g);
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["vertices"] = g.n_vertices();
        doc["edges"] = g.edges().size();
        doc["tails"] = d.total_tails;
        doc["labels"] = nlohmann::ordered_json::array();
        for (const auto& l : g.tail_labels()) doc["labels"].push_back(l.str());
        doc["components"] = d.components;
        doc["components_without_tails"] = d.components_without_tails;
        doc["tailed_vertices"] = d.tailed_vertices;
        doc["warnings"] = d.warnings;
        std::cout << doc.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        std::cout << "key,value\n";
        std::cout << "vertices," << g.n_vertices() << '\n';
        std::cout << "edges," << g.edges().size() << '\n';
        std::cout << "tails," << d.total_tails << '\n';
        std::cout << "components," << d.components << '\n';
        std::cout << "components_without_tails," << d.components_without_tails << '\n';
        return;
    }
    std::cout << "vertices: " << g.n_vertices() << "\nedges: " << g.edges().size()
              << "\ntails: " << d.total_tails << " (";
    for (std::size_t i = 0; i < g.tail_labels().size(); ++i)
        std::cout << (i ? " " : "") << g.tail_labels()[i].str();
    std::cout << ")\ncomponents: " << d.components << '\n';
    for (const auto& w : d.warnings) std::cout << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering theory for continuous-time quantum walks on tailed graphs"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string format = "table";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    double tol_flag = -1.0;
    app.add_option("--tol", tol_flag, "residual tolerance override");

    std::string graph_path, graph_path_2;
    MomentumSpec mspec;
    auto add_momentum = [&](CLI::App* sub) {
        sub->add_option("--k", mspec.k, "momentum k in (-pi, pi)");
        sub->add_option("--z", mspec.z_text, "unit-circle momentum, e.g. 0.6+0.8i");
    };

    auto* c_info = app.add_subcommand("info", "graph diagnostics");
    c_info->add_option("graph", graph_path)->required();

    auto* c_smatrix = app.add_subcommand("smatrix", "scattering matrix at one momentum");
    c_smatrix->add_option("graph", graph_path)->required();
    add_momentum(c_smatrix);

    std::string range_text;
    auto* c_sweep = app.add_subcommand("sweep", "S-matrix sweep over a momentum range");
    c_sweep->add_option("graph", graph_path)->required();
    c_sweep->add_option("--k-range", range_text, "a:b:n")->required();

    auto* c_bound = app.add_subcommand("bound", "bound-state report");
    c_bound->add_option("graph", graph_path)->required();

    int tail_arg = 0, stump_len = 0, at_vertex = 0;
    auto* c_cut = app.add_subcommand("cut", "cut one tail");
    c_cut->add_option("graph", graph_path)->required();
    c_cut->add_option("--tail", tail_arg, "tail index")->required();
    add_momentum(c_cut);

    auto* c_stump = app.add_subcommand("stump", "cut one tail leaving a stump");
    c_stump->add_option("graph", graph_path)->required();
    c_stump->add_option("--tail", tail_arg, "tail index")->required();
    c_stump->add_option("--stump-len", stump_len, "stump length")->required();
    add_momentum(c_stump);

    std::vector<int> tails_arg;
    auto* c_cut_block = app.add_subcommand("cut-block", "cut several tails at once");
    c_cut_block->add_option("graph", graph_path)->required();
    c_cut_block->add_option("--tails", tails_arg, "tail indices")->required()->expected(-1);
    add_momentum(c_cut_block);

    auto* c_attach = app.add_subcommand("attach", "attach a tail at an already-tailed vertex");
    c_attach->add_option("graph", graph_path)->required();
    c_attach->add_option("--at-vertex", at_vertex, "target vertex")->required();
    add_momentum(c_attach);

    auto* c_connect = app.add_subcommand("connect", "connect two tails into an edge");
    c_connect->add_option("graph", graph_path)->required();
    c_connect->add_option("graph2", graph_path_2);
    c_connect->add_option("--tails", tails_arg, "two tail indices")->required()->expected(2);
    add_momentum(c_connect);

    auto* c_compose = app.add_subcommand("compose", "compose two scattering gates");
    c_compose->add_option("graph", graph_path)->required();
    c_compose->add_option("graph2", graph_path_2)->required();
    add_momentum(c_compose);

    std::string level = "basic";
    auto* c_verify = app.add_subcommand("verify", "run the invariant suite against a graph");
    c_verify->add_option("graph", graph_path)->required();
    c_verify->add_option("--level", level)->check(CLI::IsMember({"basic", "full"}));

    try {
        app.parse(argc, argv);

        ToleranceConfig tol;
        if (const char* env = std::getenv("QGS_TOL")) {
            try {
                tol.residual_tol = std::stod(env);
            } catch (const std::exception&) {
                throw InputError("QGS_TOL is not a number");
            }
        }
        if (tol_flag > 0.0) tol.residual_tol = tol_flag;
        tol.validate();

        if (*c_info) {
            render_info(load_graph(graph_path), format);
        } else if (*c_smatrix) {
            const auto g = load_graph(graph_path);
            render_smatrix(s_matrix(g, mspec.resolve(), tol), g, format, tol);
        } else if (*c_sweep) {
            const auto g = load_graph(graph_path);
            const auto range = parse_k_range(range_text);
            const auto m = static_cast<std::size_t>(g.tail_count());
            std::cout << "k";
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    std::cout << ",re_s_" << i << '_' << j << ",im_s_" << i << '_' << j;
            std::cout << ",unitarity_residual\n";
            for (int step = 0; step < range.steps; ++step) {
                const double k = range.steps == 1
                                     ? range.lo
                                     : range.lo + (range.hi - range.lo) * step / (range.steps - 1);
                const auto s = s_matrix(g, Momentum::from_k(k), tol);
                std::cout << fmt_full(k);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j)
                        std::cout << ',' << fmt_full(s(i, j).real()) << ','
                                  << fmt_full(s(i, j).imag());
                std::cout << ',' << fmt_full(check_unitarity(s)) << '\n';
            }
        } else if (*c_bound) {
            render_bound(load_graph(graph_path), format, tol);
        } else if (*c_cut) {
            const auto g = load_graph(graph_path);
            const auto s = cut_tail(s_matrix(g, mspec.resolve(), tol), tail_arg);
            render_smatrix(s, remove_tail(g, tail_arg), format, tol);
        } else if (*c_stump) {
            const auto g = load_graph(graph_path);
            const auto s = cut_tail_stump(s_matrix(g, mspec.resolve(), tol), tail_arg, stump_len);
            render_smatrix(s, remove_tail_with_stump(g, tail_arg, stump_len), format, tol);
        } else if (*c_cut_block) {
            const auto g = load_graph(graph_path);
            const auto s = cut_tails_block(s_matrix(g, mspec.resolve(), tol), tails_arg);
            auto pruned = g;
            auto sorted = tails_arg;
            std::sort(sorted.rbegin(), sorted.rend());
            for (int t : sorted) pruned = remove_tail(pruned, t);
            render_smatrix(s, pruned, format, tol);
        } else if (*c_attach) {
            const auto g = load_graph(graph_path);
            const auto s = attach_tail_at_vertex(s_matrix(g, mspec.resolve(), tol), at_vertex);
            render_smatrix(s, add_tail(g, at_vertex), format, tol);
        } else if (*c_connect) {
            const auto zm = mspec.resolve();
            const auto g1 = load_graph(graph_path);
            if (graph_path_2.empty()) {
                const auto s = connect_tails(s_matrix(g1, zm, tol), tails_arg[0], tails_arg[1]);
                render_smatrix(s, connect_tails_in_graph(g1, tails_arg[0], tails_arg[1]), format,
                               tol);
            } else {
                const auto g2 = load_graph(graph_path_2);
                const auto sum =
                    direct_sum(s_matrix(g1, zm, tol), s_matrix(g2, zm, tol), g1.n_vertices());
                const int second = g1.tail_count() + tails_arg[1];
                const auto s = connect_tails(sum, tails_arg[0], second);
                render_smatrix(s,
                               connect_tails_in_graph(disjoint_union(g1, g2), tails_arg[0], second),
                               format, tol);
            }
        } else if (*c_compose) {
            const auto zm = mspec.resolve();
            const auto g1 = load_graph(graph_path);
            const auto g2 = load_graph(graph_path_2);
            const auto s = compose_gates(s_matrix(g1, zm, tol), s_matrix(g2, zm, tol), tol);
            render_smatrix(s, disjoint_union(g1, g2), format, tol);
        } else if (*c_verify) {
            verify_graph(load_graph(graph_path), level, tol);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
