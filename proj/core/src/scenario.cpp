#include "colombeau/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "colombeau/classify.hpp"
#include "colombeau/embedding.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/geometry.hpp"
#include "colombeau/manifold.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/suppleness.hpp"

namespace colombeau::scenario {

using nlohmann::json;
using nets::Net;

namespace {

const json& need(const json& sc, const char* field, const char* kind) {
    auto it = sc.find(field);
    if (it == sc.end())
        throw ScenarioError(std::string("scenario field '") + field +
                            "' is required for kind '" + kind + "'");
    return *it;
}

CompactBox box_from_json(const json& b) {
    if (!b.is_object() || !b.contains("lo") || !b.contains("hi"))
        throw ScenarioError("box must be {\"lo\": ..., \"hi\": ...}");
    return CompactBox(b["lo"].get<double>(), b["hi"].get<double>());
}

geometry::ClosedSet closedset_from_json(const json& s) {
    geometry::ClosedSet set;
    if (s.contains("points"))
        for (const auto& p : s["points"]) set.add_point(p.get<double>());
    if (s.contains("intervals"))
        for (const auto& iv : s["intervals"])
            set.add_interval(iv.at(0).get<double>(), iv.at(1).get<double>());
    if (s.contains("families"))
        for (const auto& f : s["families"])
            set.add_family(f.at("scale").get<double>(),
                           f.value("sign", 1));
    return set;
}

manifold::AngleSet angleset_from_json(const json& s) {
    manifold::AngleSet set;
    if (s.contains("angles"))
        for (const auto& p : s["angles"]) set.add_point(p.get<double>());
    if (s.contains("arcs"))
        for (const auto& arc : s["arcs"])
            set.add_arc(arc.at(0).get<double>(), arc.at(1).get<double>());
    return set;
}

suppleness::WidthMode width_mode_from(const json& sc) {
    std::string mode = sc.value("width_mode", "linear");
    if (mode == "linear") return suppleness::WidthMode::linear;
    if (mode == "log") return suppleness::WidthMode::log;
    throw ScenarioError("width_mode must be 'linear' or 'log', got '" + mode + "'");
}

json fit_to_json(const AsymptoticFit& f, int order) {
    json sup = json::array();
    for (const auto& [eps, s] : f.sup_values) sup.push_back(json::array({eps, s}));
    return json{{"order", order},
                {"slope", f.slope},
                {"intercept", f.intercept},
                {"r_squared", f.r_squared},
                {"degenerate", f.degenerate},
                {"positive_count", f.positive_count},
                {"sup_values", sup}};
}

json classification_to_json(const nets::ClassificationReport& r) {
    json fits = json::array();
    for (const auto& of : r.fits) fits.push_back(fit_to_json(of.fit, of.order));
    return json{{"verdict", r.verdict}, {"note", r.note}, {"fits", fits}};
}

const char* verdict_name(suppleness::Verdict v) {
    switch (v) {
        case suppleness::Verdict::exact_zero: return "exact_zero";
        case suppleness::Verdict::negligible_slope: return "negligible_slope";
        default: return "FAIL";
    }
}

std::vector<suppleness::Probe> probes_from_json(const json& sc) {
    std::vector<suppleness::Probe> probes;
    for (const auto& p : sc) {
        std::string t = p.at("target").get<std::string>();
        if (t != "z1" && t != "z2")
            throw ScenarioError("probe target must be 'z1' or 'z2'");
        probes.push_back({p.at("x").get<double>(),
                          t == "z1" ? suppleness::ProbeTarget::z1
                                    : suppleness::ProbeTarget::z2});
    }
    return probes;
}

json certificate_to_json(const suppleness::SupportCertificate& cert) {
    json probes = json::array();
    for (const auto& p : cert.probes) {
        json entry{{"x", p.probe.x},
                   {"target", p.probe.target == suppleness::ProbeTarget::z1 ? "z1" : "z2"},
                   {"case", p.case_name},
                   {"radius", p.radius},
                   {"eps_zero", p.eps_zero},
                   {"verdict", verdict_name(p.verdict)}};
        if (p.fit) entry["fit"] = fit_to_json(*p.fit, 0);
        probes.push_back(entry);
    }
    return json{{"all_ok", cert.all_ok()}, {"probes", probes}};
}

// Exact-additivity spot check over seeded samples in the window.
json additivity_check(const Net& f, const Net& f1, const Net& f2, const CompactBox& win,
                      const EpsSchedule& sched, int samples, std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b9u + 17);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps =
            sched.values()[static_cast<std::size_t>(rng.unit() * sched.size()) %
                           sched.size()];
        double x = rng.uniform(win.lo, win.hi);
        double a = f(eps, x, 0), b = f1(eps, x, 0) + f2(eps, x, 0);
        double err = std::abs(a - b) / std::max(1.0, std::abs(a));
        worst = std::max(worst, err);
    }
    return json{{"samples", samples}, {"max_rel_error", worst}, {"ok", worst <= 1e-12}};
}

}  // namespace

EpsSchedule schedule_from_json(const json& sc) {
    if (!sc.contains("schedule")) return EpsSchedule::geometric();
    const json& s = sc["schedule"];
    if (s.contains("values")) {
        std::vector<double> v;
        for (const auto& e : s["values"]) v.push_back(e.get<double>());
        return EpsSchedule(std::move(v));
    }
    return EpsSchedule::geometric(s.value("k_min", 3), s.value("k_max", 20),
                                  s.value("step", 1.0));
}

Net net_from_json(const json& spec) {
    if (spec.contains("constant")) return nets::constant_net(spec["constant"].get<double>());
    if (spec.contains("named")) {
        std::string n = spec["named"].get<std::string>();
        if (n == "eps_sq_sin") return nets::eps_sq_sin();
        if (n == "exp_neg_inv_eps_sin") return nets::exp_neg_inv_eps_sin();
        if (n == "eps_pow_neg_inv_x") return nets::eps_pow_neg_inv_x();
        throw ScenarioError("unknown named net '" + n + "'");
    }
    if (spec.contains("scaled_bump")) {
        double center = spec["scaled_bump"].value("center", 0.0);
        return mollifier::scaled(mollifier::standard_bump(), center);
    }
    if (spec.contains("smooth_indicator")) {
        const json& si = spec["smooth_indicator"];
        std::vector<Interval> ivs;
        for (const auto& iv : si.at("intervals"))
            ivs.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
        auto width = si.value("width", "linear") == std::string("log")
                         ? mollifier::log_width()
                         : mollifier::linear_width();
        return mollifier::smooth_indicator(mollifier::standard_bump(), ivs, width);
    }
    if (spec.contains("distribution")) {
        const json& d = spec["distribution"];
        std::optional<Net> net;
        bool has_atoms = d.contains("atoms") && !d["atoms"].empty();
        if (has_atoms || d.contains("density")) {
            embedding::AtomicDistribution dist;
            if (has_atoms)
                for (const auto& a : d["atoms"])
                    dist.atoms.push_back({a.at("c").get<double>(), a.value("coef", 1.0),
                                          a.value("order", 0)});
            if (d.contains("density")) {
                // A scaled copy of the bump profile: smooth, compact support.
                const json& dd = d["density"];
                double center = dd.value("center", 0.0);
                double half_width = dd.at("half_width").get<double>();
                double amp = dd.value("amplitude", 1.0);
                if (!(half_width > 0.0))
                    throw ScenarioError("density half_width must be > 0");
                dist.density = [center, half_width, amp](double y, int order) {
                    return amp *
                           mollifier::standard_bump().derivative((y - center) / half_width,
                                                                 order) /
                           std::pow(half_width, order);
                };
                dist.density_support = {center - half_width, center + half_width};
            }
            net = embedding::embed(dist, mollifier::MomentBump(d.value("moments", 0)));
        }
        if (d.contains("example2")) {
            embedding::Example2Family fam{d["example2"].value("scale", 1.0),
                                          d["example2"].value("center", true)};
            Net e2 = embedding::example2_net(fam, mollifier::standard_bump());
            net = net ? nets::add(*net, e2) : e2;
        }
        if (!net) throw ScenarioError("distribution spec needs atoms or example2");
        return *net;
    }
    if (spec.contains("sum")) {
        const json& xs = spec["sum"];
        if (xs.size() < 2) throw ScenarioError("sum needs at least two nets");
        Net acc = net_from_json(xs[0]);
        for (std::size_t i = 1; i < xs.size(); ++i) acc = nets::add(acc, net_from_json(xs[i]));
        return acc;
    }
    if (spec.contains("product")) {
        const json& xs = spec["product"];
        if (xs.size() < 2) throw ScenarioError("product needs at least two nets");
        Net acc = net_from_json(xs[0]);
        for (std::size_t i = 1; i < xs.size(); ++i) acc = nets::mul(acc, net_from_json(xs[i]));
        return acc;
    }
    if (spec.contains("scale")) {
        return nets::scale(net_from_json(spec["scale"].at("net")),
                           spec["scale"].at("factor").get<double>());
    }
    throw ScenarioError("unrecognized net spec: " + spec.dump());
}

void emit_samples(const Net& net, const std::vector<double>& eps_list,
                  const std::vector<double>& grid, const std::string& out_csv) {
    for (double x : grid)
        if (!net.domain().contains_open(x))
            throw DomainError("emit_samples: grid point outside net domain");
    std::FILE* f = std::fopen(out_csv.c_str(), "w");
    if (!f) throw IoError("emit_samples: cannot open '" + out_csv + "' for writing");
    std::fprintf(f, "eps,x,value\n");
    for (double eps : eps_list)
        for (double x : grid)
            std::fprintf(f, "%.17e,%.17e,%.17e\n", eps, x, net(eps, x, 0));
    std::fclose(f);
}

namespace {

json run_classify(const json& sc, const EpsSchedule& sched) {
    Net net = net_from_json(need(sc, "net", "classify"));
    CompactBox box = box_from_json(need(sc, "box", "classify"));
    std::vector<int> orders;
    if (sc.contains("orders"))
        for (const auto& o : sc["orders"]) orders.push_back(o.get<int>());
    else
        orders = {0, 1, 2, 3, 4};

    json checks = json::object();
    for (const auto& c : need(sc, "checks", "classify")) {
        std::string name = c.get<std::string>();
        if (name == "moderate") {
            checks["moderate"] = classification_to_json(nets::is_moderate(
                net, box, orders, sched, sc.value("slope_floor", -50.0)));
        } else if (name == "negligible") {
            checks["negligible"] = classification_to_json(nets::is_negligible(
                net, box, sched, sc.value("slope_threshold", 10.0)));
        } else if (name == "ginfty") {
            checks["ginfty"] = classification_to_json(nets::is_ginfty(
                net, box, orders, sched, sc.value("spread_tol", 0.5)));
        } else {
            throw ScenarioError("unknown check '" + name +
                                "' (valid: moderate, negligible, ginfty)");
        }
    }
    return json{{"checks", checks}};
}

json run_decompose(const json& sc, const EpsSchedule& sched, std::uint64_t seed,
                   bool ginf, int* exit_code) {
    const char* kind = ginf ? "ginf_decompose" : "decompose";
    Net f = net_from_json(need(sc, "net", kind));
    geometry::ClosedSet z1 = closedset_from_json(need(sc, "z1", kind));
    geometry::ClosedSet z2 = closedset_from_json(need(sc, "z2", kind));
    double delta = need(sc, "delta", kind).get<double>();
    CompactBox window = box_from_json(need(sc, "window", kind));
    int scan_points = sc.value("scan_points", 20001);

    suppleness::DecompositionResult res = [&] {
        if (ginf) {
            CompactBox gbox = sc.contains("ginf_box") ? box_from_json(sc["ginf_box"])
                                                      : window;
            return suppleness::ginf_decompose(f, z1, z2, delta, window, gbox, sched,
                                              sc.value("spread_tol", 0.5), scan_points);
        }
        return suppleness::decompose(f, z1, z2, delta, window, width_mode_from(sc),
                                     sched.max_eps(), scan_points);
    }();

    json out;
    json tilde = json::array();
    for (const Interval& iv : res.tilde_intervals)
        tilde.push_back(json::array({iv.lo, iv.hi}));
    out["tilde_intervals"] = tilde;
    out["delta"] = res.delta;
    out["width_mode"] = res.width_mode == suppleness::WidthMode::linear ? "linear" : "log";
    out["additivity"] = additivity_check(f, res.f1, res.f2, window, sched,
                                         sc.value("additivity_samples", 200), seed);

    if (sc.contains("probes")) {
        auto cert = suppleness::certify_support(res, z1, z2,
                                                probes_from_json(sc["probes"]), sched,
                                                sc.value("probe_grid", 257));
        out["certificate"] = certificate_to_json(cert);
        if (!cert.all_ok()) *exit_code = 2;
    }
    if (ginf) {
        out["ginfty"] = json{{"f", classification_to_json(*res.ginf_f)},
                             {"f1", classification_to_json(*res.ginf_f1)},
                             {"f2", classification_to_json(*res.ginf_f2)}};
    }
    return out;
}

json run_manifold(const json& sc, const EpsSchedule& sched, std::uint64_t seed,
                  int* exit_code) {
    manifold::Atlas atlas = manifold::make_atlas();
    manifold::PartitionOfUnity pou(atlas);

    const json& uspec = need(sc, "u", "manifold_decompose");
    manifold::ManifoldNet u = [&]() -> manifold::ManifoldNet {
        if (uspec.contains("angle_delta"))
            return manifold::ManifoldNet::embedded_delta(
                atlas, uspec["angle_delta"].at("at").get<double>());
        if (uspec.contains("angle_deltas")) {
            std::vector<std::pair<double, double>> atoms;  // (angle, coefficient)
            for (const auto& a : uspec["angle_deltas"])
                atoms.emplace_back(a.at("at").get<double>(), a.value("coef", 1.0));
            auto body = [atoms](double eps, double angle, int n) {
                double total = 0.0;
                for (const auto& [at, coef] : atoms) {
                    double y = manifold::wrap_angle(angle - at);
                    if (std::abs(y) >= eps) continue;
                    total += coef *
                             mollifier::standard_bump().derivative(y / eps, n) /
                             std::pow(eps, n + 1);
                }
                return total;
            };
            return manifold::ManifoldNet::from_global(atlas, body, 8, "deltas@angles");
        }
        if (uspec.contains("constant"))
            return manifold::ManifoldNet::constant(atlas, uspec["constant"].get<double>());
        throw ScenarioError("manifold net spec needs angle_delta, angle_deltas or constant");
    }();

    manifold::AngleSet z1 = angleset_from_json(need(sc, "z1", "manifold_decompose"));
    manifold::AngleSet z2 = angleset_from_json(need(sc, "z2", "manifold_decompose"));
    double delta = need(sc, "delta", "manifold_decompose").get<double>();

    auto dec = manifold::manifold_decompose(atlas, pou, u, z1, z2, delta,
                                            width_mode_from(sc), sched.max_eps());

    // Exact additivity at seeded angle samples.
    Rng rng(seed + 11);
    int samples = sc.value("additivity_samples", 200);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double eps = sched.values()[static_cast<std::size_t>(rng.unit() * sched.size()) %
                                    sched.size()];
        double angle = rng.uniform(-manifold::kPi, manifold::kPi);
        double a = u.eval_angle(eps, angle);
        double b = dec.u1.eval_angle(eps, angle) + dec.u2.eval_angle(eps, angle);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }

    json out;
    out["additivity"] = json{{"samples", samples}, {"max_rel_error", worst},
                             {"ok", worst <= 1e-12}};

    auto law1 = manifold::check_transformation_law(dec.u1, 64, {0.125, 0.03125});
    auto law2 = manifold::check_transformation_law(dec.u2, 64, {0.125, 0.03125});
    out["transformation_law"] =
        json{{"ok", law1.ok && law2.ok},
             {"max_deviation", std::max(law1.max_deviation, law2.max_deviation)}};

    if (sc.contains("probes")) {
        std::vector<manifold::CircleProbe> probes;
        for (const auto& p : sc["probes"]) {
            std::string t = p.at("target").get<std::string>();
            if (t != "z1" && t != "z2")
                throw ScenarioError("probe target must be 'z1' or 'z2'");
            probes.push_back({p.at("angle").get<double>(),
                              t == "z1" ? suppleness::ProbeTarget::z1
                                        : suppleness::ProbeTarget::z2});
        }
        auto cert = manifold::certify_circle(dec, z1, z2, probes, sched,
                                             sc.value("probe_grid", 257));
        json probes_json = json::array();
        for (const auto& p : cert.probes)
            probes_json.push_back(json{{"angle", p.probe.angle},
                                       {"target", p.probe.target == suppleness::ProbeTarget::z1
                                                      ? "z1"
                                                      : "z2"},
                                       {"radius", p.radius},
                                       {"eps_zero", p.eps_zero},
                                       {"verdict", verdict_name(p.verdict)}});
        out["certificate"] = json{{"all_ok", cert.all_ok()}, {"probes", probes_json}};
        if (!cert.all_ok()) *exit_code = 2;
    }

    // Partition-of-unity health on a fixed grid.
    double sum_err = 0.0;
    for (int i = 0; i < 1001; ++i) {
        double angle = -manifold::kPi + manifold::kTwoPi * i / 1001;
        double s = pou.chi(0, angle) * pou.chi(0, angle) +
                   pou.chi(1, angle) * pou.chi(1, angle);
        sum_err = std::max(sum_err, std::abs(s - 1.0));
    }
    out["sum_chi_sq_max_error"] = sum_err;
    return out;
}

json run_example2(const json& sc, const EpsSchedule& sched) {
    embedding::Example2Family fam{sc.value("scale", 1.0), sc.value("center", true)};
    Net net = embedding::example2_net(fam, mollifier::standard_bump());
    CompactBox box = sc.contains("box") ? box_from_json(sc["box"]) : CompactBox(-0.1, 0.1);
    AsymptoticFit fit = nets::fit_order(net, box, 0, sched);

    std::vector<long long> n_list;
    if (sc.contains("n_list"))
        for (const auto& n : sc["n_list"]) n_list.push_back(n.get<long long>());
    else
        n_list = {10, 1000, 100000};
    auto sums = embedding::pairing_partial_sums(fam.scale, embedding::plateau_test_fn(),
                                                n_list);
    json table = json::array();
    for (std::size_t i = 0; i < n_list.size(); ++i)
        table.push_back(json{{"n", n_list[i]}, {"value", sums[i]}});

    return json{{"slope_fit", fit_to_json(fit, 0)},
                {"partial_sums", table},
                {"tail_bound_coeff", net.meta().at("tail_bound_coeff")}};
}

json run_non_flabby(const json& sc, const EpsSchedule& sched) {
    std::vector<double> cs;
    if (sc.contains("c_list"))
        for (const auto& c : sc["c_list"]) cs.push_back(c.get<double>());
    else
        cs = {1.0, 0.5, 0.2, 0.1};
    json rows = json::array();
    for (const auto& row : manifold::non_flabby_demo(cs, sched))
        rows.push_back(json{{"c", row.c},
                            {"slope", row.slope},
                            {"slope_times_c", row.slope * row.c}});
    return json{{"rows", rows}};
}

json run_assert2(const json& sc, std::uint64_t seed) {
    geometry::ClosedSet z1 = closedset_from_json(need(sc, "z1", "assert2"));
    geometry::ClosedSet z2 = closedset_from_json(need(sc, "z2", "assert2"));
    double delta = need(sc, "delta", "assert2").get<double>();
    CompactBox window = sc.contains("window") ? box_from_json(sc["window"])
                                              : CompactBox(-2.0, 2.0);
    int samples = sc.value("samples", 100000);
    bool ok = geometry::assert2_check(z1, z2, delta, samples, window, seed);
    return json{{"ok", ok}, {"samples", samples}};
}

json run_samples(const json& sc) {
    Net net = net_from_json(need(sc, "net", "samples"));
    std::vector<double> eps_list;
    for (const auto& e : need(sc, "eps", "samples")) eps_list.push_back(e.get<double>());
    const json& g = need(sc, "grid", "samples");
    int n = g.at("n").get<int>();
    if (n < 2) throw ScenarioError("samples grid needs n >= 2");
    double lo = g.at("lo").get<double>(), hi = g.at("hi").get<double>();
    std::vector<double> grid;
    for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * i / (n - 1));
    std::string out_csv = need(sc, "out_csv", "samples").get<std::string>();
    emit_samples(net, eps_list, grid, out_csv);
    return json{{"out_csv", out_csv},
                {"rows", static_cast<long long>(eps_list.size()) * n}};
}

}  // namespace

RunResult run_scenario_json(const json& sc, std::optional<std::uint64_t> seed_override) {
    if (!sc.is_object() || !sc.contains("kind"))
        throw ScenarioError("scenario must be an object with a 'kind' field");
    std::string kind = sc["kind"].get<std::string>();
    std::uint64_t seed = seed_override.value_or(sc.value("seed", 0ull));

    auto started = std::chrono::steady_clock::now();
    EpsSchedule sched = schedule_from_json(sc);

    int exit_code = 0;
    json result;
    if (kind == "classify") {
        result = run_classify(sc, sched);
    } else if (kind == "decompose") {
        result = run_decompose(sc, sched, seed, false, &exit_code);
    } else if (kind == "ginf_decompose") {
        result = run_decompose(sc, sched, seed, true, &exit_code);
    } else if (kind == "manifold_decompose") {
        result = run_manifold(sc, sched, seed, &exit_code);
    } else if (kind == "example2") {
        result = run_example2(sc, sched);
    } else if (kind == "non_flabby") {
        result = run_non_flabby(sc, sched);
    } else if (kind == "assert2") {
        result = run_assert2(sc, seed);
    } else if (kind == "samples") {
        result = run_samples(sc);
    } else {
        throw ScenarioError(
            "unknown scenario kind '" + kind +
            "' (valid: classify, decompose, ginf_decompose, manifold_decompose, "
            "example2, non_flabby, assert2, samples)");
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();

    RunResult rr;
    rr.exit_code = exit_code;
    rr.report = json{{"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                     {"seed", seed},
                     {"scenario", sc},
                     {"status", exit_code == 0 ? "ok" : "fail_verdicts"},
                     {"result", result},
                     {"wall_ms", elapsed}};
    return rr;
}

RunResult run_scenario_file(const std::string& path,
                            const std::optional<std::string>& out_override,
                            std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    json sc;
    try {
        sc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError("malformed scenario JSON in '" + path + "': " + e.what());
    }

    RunResult rr = run_scenario_json(sc, seed_override);

    // Default report path lands in the invoking directory, not next to the
    // scenario (bundled scenario directories stay pristine).
    std::string default_out =
        std::filesystem::path(path).filename().replace_extension(".report.json").string();
    std::string out = out_override.value_or(sc.value("out", default_out));
    std::ofstream os(out);
    if (!os) throw IoError("cannot open report path '" + out + "' for writing");
    os << rr.report.dump(2) << "\n";
    rr.report_path = out;
    return rr;
}

}  // namespace colombeau::scenario
