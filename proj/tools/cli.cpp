// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "aniso/cartoon.hpp"
#include "aniso/fft.hpp"
#include "aniso/gram.hpp"
#include "aniso/parallel.hpp"
#include "aniso/separation.hpp"
#include "aniso/transform.hpp"

namespace aniso::cli {

namespace {

const CLI::Validator kPowerOfTwo(
    [](std::string& s) -> std::string {
        long long v = 0;
        try {
            v = std::stoll(s);
        } catch (const std::exception&) {
            return "grid must be an integer";
        }
        return is_power_of_two(v) ? "" : "grid must be a power of 2";
    },
    "POW2");

const CLI::Validator kFrameName = CLI::IsMember({"curvelet", "shearlet", "wavelet"});

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::filesystem::path prepare_out(const RunConfig& c) {
    std::filesystem::path out(c.out);
    std::filesystem::create_directories(out);
    write_json(out / "config.json", to_json(c));
    return out;
}

L1Weighting parse_weighting(const std::string& s) {
    if (s == "none") return L1Weighting::none;
    if (s == "density") return L1Weighting::density;
    if (s == "redundancy") return L1Weighting::redundancy;
    throw std::invalid_argument("unknown weighting '" + s + "'");
}

Vec2 vec_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

MixtureSpec mixture_from_json(const Json& j) {
    MixtureSpec s = default_mixture();
    if (j.contains("points")) {
        s.points.clear();
        for (const auto& p : j["points"]) s.points.push_back(vec_from_json(p));
    }
    if (j.contains("curve")) {
        if (j["curve"].is_null()) {
            s.with_curve = false;
        } else {
            const auto& c = j["curve"];
            if (c.contains("center")) s.curve.center = vec_from_json(c["center"]);
            if (c.contains("r0")) s.curve.r0 = c["r0"].get<double>();
            if (c.contains("a")) s.curve.a = c["a"].get<std::vector<double>>();
            if (c.contains("b")) s.curve.b = c["b"].get<std::vector<double>>();
        }
    }
    if (j.contains("point_weight")) s.point_weight = j["point_weight"].get<double>();
    if (j.contains("curve_weight")) s.curve_weight = j["curve_weight"].get<double>();
    if (j.contains("clip_pixels")) s.clip_pixels = j["clip_pixels"].get<double>();
    if (j.contains("taper_inner")) s.taper_inner = j["taper_inner"].get<double>();
    if (j.contains("taper_outer")) s.taper_outer = j["taper_outer"].get<double>();
    return s;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_atoms(const RunConfig& c) {
    const AtomsArgs& a = c.atoms;
    const FrequencyGrid grid(a.grid);
    if (a.j < 0 || a.j > grid.max_scale()) throw std::invalid_argument("scale exceeds the grid band");
    AtomIndex index;
    switch (parse_frame(a.frame)) {
        case FrameKind::curvelet:
            if (a.ell < 0 || a.ell >= curvelet_orientation_count(a.j))
                throw std::invalid_argument("ell out of range");
            index = CurveletIndex{a.j, a.ell, {a.m1, a.m2}};
            break;
        case FrameKind::shearlet:
            if (a.cone != 1 && a.cone != 2) throw std::invalid_argument("cone must be 1 or 2");
            if (std::abs(a.k) > shear_limit(a.j)) throw std::invalid_argument("shear out of range");
            index = ShearletIndex{a.j, a.k, {a.m1, a.m2}, a.cone};
            break;
        case FrameKind::wavelet:
            if (a.h < 1 || a.h > 3) throw std::invalid_argument("h must be 1, 2 or 3");
            index = WaveletIndex{a.h, a.j, {a.m1, a.m2}};
            break;
    }
    const int n = a.grid;
    ComplexBuffer buf(grid.count());
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            buf[std::size_t(p) * n + q] = atom_hat(index, Vec2{double(grid.frequency(p)), double(grid.frequency(q))});
    if (a.domain == "space") {
        fft2_backward(n, n, buf);
        for (auto& v : buf) v /= double(n);
    }
    GridFile g;
    g.rows = n;
    g.cols = 2 * n;
    g.data.reserve(2 * grid.count());
    for (const auto& v : buf) {
        g.data.push_back(v.real());
        g.data.push_back(v.imag());
    }
    g.meta["domain"] = a.domain;
    g.meta["components"] = "interleaved real, imaginary";
    g.meta["grid"] = n;
    g.meta["frequency_layout"] = "unshifted";
    g.meta["index"] = to_json(index);
    write_grid((prepare_out(c) / "atom").string(), g);
    return kOk;
}

int run_gram(const RunConfig& c) {
    const GramArgs& a = c.gram;
    const TruncationSpec t{a.j_max, a.m_radius, a.p};
    validate(t);
    const auto out = prepare_out(c);
    const CrossGram g = assemble_cross_gram(t, t, a.threshold, c.workers);
    const OpNorm norm = op_p_norm_detail(g, a.p);

    QuadratureSpec quad;
    if (a.quad_max_samples > 0) quad.max_samples = a.quad_max_samples;
    double max_dev = 0.0;
    const std::size_t checks = std::min<std::size_t>(std::size_t(std::max(a.checks, 0)), g.entries.size());
    for (std::size_t i = 0; i < checks; ++i) {
        const GramEntry& e = g.entries[i * g.entries.size() / checks];
        const auto q = inner_product(g.rows[e.row], g.cols[e.col], quad);
        max_dev = std::max(max_dev, std::abs(q - e.value));
    }

    std::ostringstream csv;
    csv << "row_index,col_index,re,im,b_norm\n";
    // Decay slice: shearlet (J, k = 0, cone 1) rows against curvelet (J, ell = 0, m = 0).
    const int slice = std::min(a.j_max, 4);
    std::vector<std::pair<double, double>> decay;
    for (const auto& e : g.entries) {
        csv << e.row << ',' << e.col << ',' << format_double(e.value.real()) << ','
            << format_double(e.value.imag()) << ',' << format_double(e.b_norm) << '\n';
        const auto& r = std::get<ShearletIndex>(g.rows[e.row]);
        const auto& q = std::get<CurveletIndex>(g.cols[e.col]);
        if (r.j == slice && r.k == 0 && r.cone == 1 && q.j == slice && q.ell == 0 && q.m == IntPair{0, 0} &&
            e.b_norm > 0.0)
            decay.push_back({e.b_norm, std::abs(e.value)});
    }
    write_text(out / "gram.csv", csv.str());

    Json s;
    s["p"] = a.p;
    s["j_max"] = a.j_max;
    s["m_radius"] = a.m_radius;
    s["threshold"] = a.threshold;
    s["rows"] = g.rows.size();
    s["cols"] = g.cols.size();
    s["entries"] = g.entries.size();
    s["op_p_norm"] = norm.value;
    s["row_sup"] = norm.row_sup;
    s["col_sup"] = norm.col_sup;
    if (a.j_max >= 1 && a.m_radius >= 4) {
        const auto prev = accumulate_gram_sums({a.j_max - 1, a.m_radius - 4, a.p}, {a.p}, a.threshold, c.workers);
        const double v = op_p_norm_from_sums(prev, 0).value;
        s["saturation_previous"] = {{"j_max", a.j_max - 1}, {"m_radius", a.m_radius - 4}, {"op_p_norm", v}};
        s["saturation_ratio"] = norm.value > 0.0 ? (norm.value - v) / norm.value : 0.0;
    } else {
        s["saturation_ratio"] = nullptr;
    }
    s["decay_slice"] = {{"j", slice}, {"k", 0}, {"ell", 0}, {"entries", decay.size()}};
    if (decay.size() >= 10) {
        const DecayFit fit = decay_fit(decay);
        s["decay_slope"] = fit.slope;
        s["decay_r2"] = fit.r2;
    } else {
        s["decay_slope"] = nullptr;
    }
    s["quadrature_checks"] = checks;
    s["quadrature_max_deviation"] = max_dev;
    write_json(out / "gram_summary.json", s);
    return kOk;
}

int run_approx(const RunConfig& c) {
    const ApproxArgs& a = c.approx;
    if (a.seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    const auto out = prepare_out(c);
    const FrequencyGrid grid(a.grid);
    FrameOptions fo;
    fo.workers = c.workers;
    std::vector<DiscreteFrame> frames;
    for (const auto& name : a.frames) frames.emplace_back(parse_frame(name), a.grid, fo);

    CartoonOptions co;
    co.nu = a.nu;
    std::ostringstream csv;
    csv << "frame,seed,N,sq_error\n";
    Json summary;
    summary["grid"] = a.grid;
    summary["nu"] = a.nu;
    summary["seeds"] = Json::array();
    std::vector<Json> per_frame(frames.size(), Json::array());
    std::vector<Json> magnitude(frames.size(), Json::array());
    std::vector<double> slope_sum(frames.size(), 0.0), plain_sum(frames.size(), 0.0), mag_sum(frames.size(), 0.0);

    for (int i = 0; i < a.seeds; ++i) {
        const std::uint64_t seed = c.seed + std::uint64_t(i);
        summary["seeds"].push_back(seed);
        const auto img = make_cartoon(seed, co);
        const auto f = render(img, a.grid);
        const auto high = split_lowpass(grid, f).high;
        for (std::size_t fi = 0; fi < frames.size(); ++fi) {
            std::vector<std::size_t> n_list;
            for (std::size_t n : default_n_list())
                if (n < frames[fi].coefficient_count()) n_list.push_back(n);
            const RateCurve rc = approximation_curve(frames[fi], f, n_list);
            for (std::size_t q = 0; q < rc.n_terms.size(); ++q)
                csv << a.frames[fi] << ',' << seed << ',' << rc.n_terms[q] << ',' << format_double(rc.sq_error[q])
                    << '\n';
            per_frame[fi].push_back({{"seed", seed},
                                     {"slope", rc.fit.slope},
                                     {"log_exponent", rc.fit.log_exponent},
                                     {"plain_slope", rc.fit.plain_slope},
                                     {"plain_r2", rc.fit.plain_r2}});
            slope_sum[fi] += rc.fit.slope;
            plain_sum[fi] += rc.fit.plain_slope;
            const auto coeffs = frames[fi].analyze(high);
            const std::size_t n_max = std::min<std::size_t>(16384, coeffs.size());
            const RateFit mf = magnitude_fit(coeffs, 16, n_max);
            magnitude[fi].push_back({{"seed", seed},
                                     {"slope", mf.slope},
                                     {"log_exponent", mf.log_exponent},
                                     {"plain_slope", mf.plain_slope}});
            mag_sum[fi] += mf.slope;
        }
    }
    write_text(out / "curve.csv", csv.str());
    Json fits;
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
        fits[a.frames[fi]] = {{"mean_slope", slope_sum[fi] / a.seeds},
                              {"mean_plain_slope", plain_sum[fi] / a.seeds},
                              {"mean_magnitude_slope", mag_sum[fi] / a.seeds},
                              {"per_seed", per_frame[fi]},
                              {"magnitude_per_seed", magnitude[fi]}};
    }
    summary["frames"] = fits;
    write_json(out / "fit.json", summary);
    return kOk;
}

int run_separate(const RunConfig& c) {
    const SeparateArgs& a = c.separate;
    MixtureSpec spec = default_mixture();
    if (!a.mixture.empty()) {
        std::ifstream in(a.mixture);
        if (!in) throw std::invalid_argument("cannot read mixture file " + a.mixture);
        spec = mixture_from_json(Json::parse(in));
    }
    if (spec.with_curve && spec.curve.self_intersects())
        std::cerr << "warning: mixture curve self-intersects\n";
    const auto js = parse_scales(a.scales);
    SeparationOptions opts;
    opts.solver.max_iter = a.max_iter;
    opts.solver.weighting = parse_weighting(a.weighting);
    opts.coherence = a.coherence;
    opts.keep_grids = true;
    opts.workers = c.workers;
    const auto out = prepare_out(c);
    const MixtureModel mix = render_mixture(spec, a.grid);

    std::ostringstream ratios, coherence;
    ratios << "j,solve_grid,ratio,point_error,curve_error,point_norm,curve_norm\n";
    coherence << "j,cluster_wavelet,cluster_shearlet,delta,coherence,bound\n";
    Json log;
    log["weighting"] = a.weighting;
    log["scales"] = Json::array();
    for (int j : js) {
        const ScaleResult r = separate_scale(mix, j, opts);
        ratios << j << ',' << r.solve_grid << ',' << format_double(r.ratio) << ',' << format_double(r.point_error)
               << ',' << format_double(r.curve_error) << ',' << format_double(r.point_norm) << ','
               << format_double(r.curve_norm) << '\n';
        coherence << j << ',' << r.cluster_wavelet << ',' << r.cluster_shearlet << ',' << format_double(r.delta)
                  << ',' << (a.coherence ? format_double(r.coherence) : "") << ','
                  << (a.coherence ? format_double(r.bound) : "") << '\n';
        log["scales"].push_back({{"j", j},
                                 {"iterations", r.report.iterations},
                                 {"converged", r.report.converged},
                                 {"objective", r.report.objective},
                                 {"smoothed_objective", r.report.smoothed_objective},
                                 {"feasibility", r.report.feasibility},
                                 {"monotone", r.report.monotone},
                                 {"history", r.report.history}});
        for (const auto& [name, data] : {std::pair{"w", &r.w_grid}, std::pair{"s", &r.s_grid}}) {
            GridFile g;
            g.rows = g.cols = a.grid;
            g.data = *data;
            g.meta["component"] = std::string(name) == "w" ? "points" : "curve";
            g.meta["scale"] = j;
            write_grid((out / (std::string(name) + "_j" + std::to_string(j))).string(), g);
        }
        if (!r.report.converged) std::cerr << "warning: scale " << j << " did not converge\n";
    }
    write_text(out / "ratios.csv", ratios.str());
    write_text(out / "coherence.csv", coherence.str());
    write_json(out / "solver_log.json", log);
    return kOk;
}

int run_transform(const RunConfig& c) {
    const TransformArgs& a = c.transform;
    const FrameKind kind = parse_frame(a.frame);
    const GridFile in = read_grid(a.input);
    FrameOptions fo;
    fo.workers = c.workers;
    GridFile g;
    if (!a.inverse) {
        if (in.rows != in.cols) throw std::invalid_argument("input grid must be square");
        if (a.grid != 0 && a.grid != in.rows) throw std::invalid_argument("input grid does not match --grid");
        const DiscreteFrame frame(kind, in.rows, fo);
        const auto coeffs = frame.analyze(in.data);
        g.rows = 1;
        g.cols = int(coeffs.size());
        g.data = coeffs.values();
        g.meta["kind"] = "coefficients";
        g.meta["frame"] = frame_name(kind);
        g.meta["grid"] = in.rows;
        g.meta["top_scale"] = frame.top_scale();
    } else {
        const int n = a.grid != 0 ? a.grid : in.meta.value("grid", 0);
        if (n == 0) throw std::invalid_argument("coefficient file lacks a grid size; pass --grid");
        const DiscreteFrame frame(kind, n, fo);
        if (in.data.size() != frame.coefficient_count())
            throw std::invalid_argument("coefficient set does not match frame");
        const CoefficientSet cs(kind, n, frame.top_scale(), frame.skipped_scales(), in.data);
        g.rows = g.cols = n;
        g.data = frame.synthesize(cs);
        g.meta["kind"] = "grid";
        g.meta["frame"] = frame_name(kind);
    }
    const std::filesystem::path stem(a.output);
    if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
    write_grid(a.output, g);
    prepare_out(c);
    return kOk;
}

}  // namespace

std::vector<int> parse_scales(const std::string& text) {
    const auto dots = text.find("..");
    std::vector<int> out;
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            out.push_back(std::stoi(text, &used));
            if (used != text.size()) throw std::invalid_argument("");
            return out;
        }
        const std::string lo_s = text.substr(0, dots), hi_s = text.substr(dots + 2);
        const int lo = std::stoi(lo_s, &used);
        if (used != lo_s.size()) throw std::invalid_argument("");
        const int hi = std::stoi(hi_s, &used);
        if (used != hi_s.size() || hi < lo) throw std::invalid_argument("");
        for (int j = lo; j <= hi; ++j) out.push_back(j);
    } catch (const std::exception&) {
        throw std::invalid_argument("scales must look like j0..j1");
    }
    return out;
}

Json to_json(const RunConfig& c) {
    Json j;
    j["version"] = c.version;
    j["subcommand"] = c.subcommand;
    j["workers"] = c.workers;
    j["seed"] = c.seed;
    j["out"] = c.out;
    Json o;
    if (c.subcommand == "atoms") {
        const auto& a = c.atoms;
        o = {{"frame", a.frame}, {"j", a.j},       {"k", a.k},       {"ell", a.ell},   {"h", a.h},
             {"cone", a.cone},   {"m1", a.m1},     {"m2", a.m2},     {"grid", a.grid}, {"domain", a.domain}};
    } else if (c.subcommand == "gram") {
        const auto& a = c.gram;
        o = {{"p", a.p},
             {"j_max", a.j_max},
             {"m_radius", a.m_radius},
             {"threshold", a.threshold},
             {"checks", a.checks},
             {"quad_max_samples", a.quad_max_samples}};
    } else if (c.subcommand == "approx") {
        const auto& a = c.approx;
        o = {{"frames", a.frames}, {"seeds", a.seeds}, {"nu", a.nu}, {"grid", a.grid}};
    } else if (c.subcommand == "separate") {
        const auto& a = c.separate;
        o = {{"mixture", a.mixture},     {"grid", a.grid},           {"scales", a.scales},
             {"max_iter", a.max_iter},   {"weighting", a.weighting}, {"coherence", a.coherence}};
    } else if (c.subcommand == "transform") {
        const auto& a = c.transform;
        o = {{"frame", a.frame}, {"grid", a.grid}, {"input", a.input}, {"output", a.output}, {"inverse", a.inverse}};
    }
    j["options"] = o;
    return j;
}

ParseResult parse_args(int argc, const char* const* argv) {
    RunConfig c;
    c.workers = default_workers();
    CLI::App app{"Curvelet, shearlet and wavelet frame analysis", "aniso"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "Base random seed");
    app.add_option("--out", c.out, "Output directory");

    auto* atoms = app.add_subcommand("atoms", "Sample one atom on a grid");
    atoms->add_option("--frame", c.atoms.frame)->check(kFrameName);
    atoms->add_option("--j", c.atoms.j, "Scale");
    atoms->add_option("--k", c.atoms.k, "Shear (shearlet)");
    atoms->add_option("--ell", c.atoms.ell, "Wedge (curvelet)");
    atoms->add_option("--band", c.atoms.h, "Band h = 1..3 (wavelet)");
    atoms->add_option("--cone", c.atoms.cone, "Cone 1 or 2 (shearlet)");
    atoms->add_option("--m1", c.atoms.m1, "Translation index");
    atoms->add_option("--m2", c.atoms.m2, "Translation index");
    atoms->add_option("--grid", c.atoms.grid, "Grid size N")->check(kPowerOfTwo);
    atoms->add_option("--domain", c.atoms.domain)->check(CLI::IsMember({"frequency", "space"}));

    auto* gram = app.add_subcommand("gram", "Truncated shearlet/curvelet cross-Grammian");
    gram->add_option("--p", c.gram.p, "Exponent p in (0, 1]");
    gram->add_option("--jmax", c.gram.j_max, "Largest scale");
    gram->add_option("--mradius", c.gram.m_radius, "Translation box radius");
    gram->add_option("--threshold", c.gram.threshold, "Entries below are dropped");
    gram->add_option("--checks", c.gram.checks, "Quadrature spot checks");
    gram->add_option("--quad-max-samples", c.gram.quad_max_samples)->group("");

    auto* approx = app.add_subcommand("approx", "n-term approximation of cartoon images");
    approx->add_option("--frame", c.approx.frames, "Frames to benchmark")->check(kFrameName);
    approx->add_option("--seeds", c.approx.seeds, "Number of cartoon seeds");
    approx->add_option("--nu", c.approx.nu, "Curvature bound");
    approx->add_option("--grid", c.approx.grid, "Grid size N")->check(kPowerOfTwo);

    auto* separate = app.add_subcommand("separate", "Point/curve separation per scale");
    separate->add_option("--mixture", c.separate.mixture, "Mixture JSON (default mixture if omitted)");
    separate->add_option("--grid", c.separate.grid, "Grid size N")->check(kPowerOfTwo);
    separate->add_option("--scales", c.separate.scales, "Scales j0..j1");
    separate->add_option("--max-iter", c.separate.max_iter, "Solver iteration cap")->check(CLI::PositiveNumber);
    separate->add_option("--weighting", c.separate.weighting, "l1 weighting")
        ->check(CLI::IsMember({"none", "density", "redundancy"}));
    separate->add_flag("!--no-coherence", c.separate.coherence, "Skip cluster coherence");

    auto* transform = app.add_subcommand("transform", "Analysis or synthesis of a grid file");
    transform->add_option("--frame", c.transform.frame)->check(kFrameName);
    transform->add_option("--grid", c.transform.grid, "Grid size N")->check(kPowerOfTwo);
    transform->add_option("--input", c.transform.input, "Input stem (<stem>.bin + <stem>.json)")->required();
    transform->add_option("--output", c.transform.output, "Output stem")->required();
    transform->add_flag("--inverse", c.transform.inverse, "Synthesize from coefficients");

    ParseResult r;
    if (argc <= 1) {
        r.exit_code = kUsage;
        r.output = app.help();
        return r;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        r.output = out.str() + err.str();
        r.exit_code = code == 0 ? kOk : kUsage;
        return r;
    }
    for (auto* sub : {atoms, gram, approx, separate, transform})
        if (sub->parsed()) c.subcommand = sub->get_name();
    if (c.subcommand == "separate") {
        try {
            parse_scales(c.separate.scales);
        } catch (const std::invalid_argument& e) {
            r.exit_code = kUsage;
            r.output = std::string("error: ") + e.what() + "\n";
            return r;
        }
    }
    r.config = c;
    return r;
}

int run(const RunConfig& c) {
    try {
        if (c.subcommand == "atoms") return run_atoms(c);
        if (c.subcommand == "gram") return run_gram(c);
        if (c.subcommand == "approx") return run_approx(c);
        if (c.subcommand == "separate") return run_separate(c);
        if (c.subcommand == "transform") return run_transform(c);
        std::cerr << "error: unknown subcommand '" << c.subcommand << "'\n";
        return kUsage;
    } catch (const QuadratureRefused& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kRefused;
    }
}

int main_entry(int argc, const char* const* argv) {
    const ParseResult p = parse_args(argc, argv);
    if (!p.config) {
        (p.exit_code == kOk ? std::cout : std::cerr) << p.output;
        return p.exit_code;
    }
    return run(*p.config);
}

}  // namespace aniso::cli
