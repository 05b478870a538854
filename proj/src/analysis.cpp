#include "holint/analysis.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>

#include "holint/field_parse.hpp"
#include "holint/holonomy.hpp"
#include "holint/plane_resolution.hpp"
#include "holint/resonance.hpp"
#include "holint/tangent_distribution.hpp"

namespace holint {

using nlohmann::json;

Task task_from_name(const std::string& name) {
    if (name == "star") return Task::star;
    if (name == "resonances") return Task::resonances;
    if (name == "first_integral") return Task::first_integral;
    if (name == "meromorphic_invariant") return Task::meromorphic_invariant;
    if (name == "distribution") return Task::distribution;
    if (name == "resolution") return Task::resolution;
    if (name == "holonomy") return Task::holonomy;
    throw ConfigError("unknown task '" + name + "'");
}

std::string task_name(Task t) {
    switch (t) {
        case Task::star: return "star";
        case Task::resonances: return "resonances";
        case Task::first_integral: return "first_integral";
        case Task::meromorphic_invariant: return "meromorphic_invariant";
        case Task::distribution: return "distribution";
        case Task::resolution: return "resolution";
        case Task::holonomy: return "holonomy";
    }
    return "?";
}

std::set<Task> all_tasks() {
    return {Task::star, Task::resonances, Task::first_integral, Task::meromorphic_invariant,
            Task::distribution, Task::resolution, Task::holonomy};
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

json index_json(const MultiIndex<3>& I) { return json::array({I[0], I[1], I[2]}); }

json direction_json(const IntegerDirection& dir) {
    return {{"m", dir.m},
            {"n", dir.n},
            {"k", dir.k},
            {"unit", dir.unit.str()},
            {"permutation", {dir.permutation[0], dir.permutation[1], dir.permutation[2]}}};
}

// Runs one task body, folding toolkit errors into the task record.
template <typename F>
json guarded(F&& body) {
    try {
        json r = body();
        if (!r.contains("status")) r["status"] = "ok";
        return r;
    } catch (const BudgetError& e) {
        return {{"status", "budget"}, {"message", e.what()}};
    } catch (const Error& e) {
        return {{"status", "error"}, {"message", e.what()}};
    }
}

struct Pipeline {
    const AnalysisRequest& req;
    std::optional<IntegerDirection> dir;
    std::optional<ExponentPair> integral;
    bool budget_hit = false;

    explicit Pipeline(const AnalysisRequest& r) : req(r) { dir = first_jet_test(r.field.lambda()); }

    json star() {
        return guarded([&] {
            StarReport rep = check_star(req.field.lambda());
            json r{{"holds", rep.holds}};
            if (rep.holds) {
                r["line_direction"] = {to_string(rep.line_direction.first), to_string(rep.line_direction.second)};
                r["distinguished_index"] = rep.distinguished_index + 1;
                r["lambda_X"] = rep.distinguished_value.str();
            }
            return r;
        });
    }

    json resonances() {
        return guarded([&] {
            int bound = req.degree_bound > 0 ? req.degree_bound : req.field.order();
            auto list = enumerate_resonances(req.field.lambda(), bound);
            json arr = json::array();
            for (const auto& I : list) arr.push_back(index_json(I));
            return json{{"degree_bound", bound}, {"indices", arr}, {"count", list.size()}};
        });
    }

    json first_integral() {
        return guarded([&]() -> json {
            if (!dir)
                return {{"status", "not_applicable"},
                        {"message", "no integer (+,+,-) eigenvalue direction: the first-jet "
                                    "necessary condition fails"}};
            ExponentPair F = monomial_first_integral(*dir);
            integral = F;
            int ord = std::max(req.field.order(), F.N.order() + F.M.order());
            Series3 f1 = Series3::monomial(ord, F.N);
            Series3 f2 = Series3::monomial(ord, F.M);
            VectorFieldGerm lin = VectorFieldGerm::linear(req.field.lambda(), ord);
            FirstIntegralCheck linear_check = verify_first_integral(lin, f1, f2);
            Series3 ff1 = Series3::monomial(req.field.order() + 1, F.N);
            Series3 ff2 = Series3::monomial(req.field.order() + 1, F.M);
            FirstIntegralCheck full_check = verify_first_integral(req.field, ff1, ff2);
            return {{"direction", direction_json(*dir)},
                    {"N", index_json(F.N)},
                    {"M", index_json(F.M)},
                    {"transversal", linear_check.transversal},
                    {"linear_residuals", {linear_check.r1.str(), linear_check.r2.str()}},
                    {"field_residuals", {full_check.r1.str(), full_check.r2.str()}},
                    {"field_residuals_zero", full_check.r1.is_zero() && full_check.r2.is_zero()}};
        });
    }

    json meromorphic() {
        return guarded([&]() -> json {
            if (!dir || !integral)
                return {{"status", "skipped"},
                        {"message", "needs the first_integral task and an integer direction"}};
            MeromorphicInvariant inv = meromorphic_invariant(integral->N, integral->M, *dir);
            return {{"exponent", {inv.exponent[0], inv.exponent[1], inv.exponent[2]}},
                    {"adapted", inv.adapted},
                    {"numerator", index_json(inv.numerator)},
                    {"denominator", index_json(inv.denominator)}};
        });
    }

    json distribution() {
        return guarded([&]() -> json {
            if (!dir)
                return {{"status", "skipped"},
                        {"message", "needs an integer (+,+,-) eigenvalue direction"}};
            VectorFieldGerm Xn = normalize(to_normal_shape(req.field, *dir));
            int solve_order = Xn.order() - 1;
            JetSolveReport rep = solve_pde_jet(Xn, CauchyData(Series2(solve_order)), solve_order);
            DistributionSpec spec(rep.p_bar, Series3(rep.p_bar.order()));
            spec.b_normalized = true;
            OneForm3 w = build_one_form(Xn, spec);
            Series3 tangency = contract(Xn, w);
            Series3 integ = integrability_residual(w);
            json res_idx = json::array(), obs = json::array();
            for (const auto& I : rep.resonant_indices) res_idx.push_back(index_json(I));
            for (const auto& I : rep.obstructions) obs.push_back(index_json(I));
            return {{"solve_order", solve_order},
                    {"p_bar", rep.p_bar.str()},
                    {"resonant_indices", res_idx},
                    {"obstructions", obs},
                    {"residual_order", rep.residual_order},
                    {"tangency_residual_zero", tangency.is_zero()},
                    {"integrability_min_degree", integ.min_degree()},
                    {"integrability_order", integ.order()}};
        });
    }

    json resolution() {
        return guarded([&]() -> json {
            if (!dir)
                return {{"status", "skipped"},
                        {"message", "needs an integer (+,+,-) eigenvalue direction"}};
            VectorFieldGerm Xn = to_normal_shape(req.field, *dir);
            std::vector<GaussianRational> candidates = req.z0;
            if (candidates.empty()) {
                // Default grid 1/q^j built from the reduced n of the direction.
                long q = std::max<long>(2, dir->n / std::gcd(dir->m, dir->n));
                candidates.emplace_back(0);
                Rational v(1);
                for (int j = 1; j <= 4; ++j) {
                    v /= q;
                    candidates.emplace_back(v);
                }
            }
            DicriticalSearchResult search = dicritical_parameter_search(Xn, candidates, req.max_blowups);
            json hits = json::array(), failures = json::array();
            for (const auto& [z0, tree] : search.hits)
                hits.push_back({{"z0", z0.str()},
                                {"blowups", tree.blowup_count},
                                {"dicritical_components", tree.dicritical_components.size()},
                                {"tree", json::parse(tree_to_json_string(tree))},
                                {"tree_text", tree_to_text(tree)}});
            for (const auto& f : search.failures) {
                failures.push_back({{"z0", f.z0.str()}, {"message", f.message}, {"budget", f.budget}});
                if (f.budget) budget_hit = true;
            }
            json r{{"candidates", candidates.size()}, {"dicritical", hits}, {"failures", failures}};
            if (budget_hit) r["status"] = "budget";
            return r;
        });
    }

    json holonomy() {
        return guarded([&]() -> json {
            if (!dir)
                return {{"status", "skipped"},
                        {"message", "needs an integer (+,+,-) eigenvalue direction"}};
            VectorFieldGerm Xn = to_normal_shape(req.field, *dir);
            NumericGerm g = NumericGerm::from_field(Xn);
            Complex z0(0.25, 0.0);
            for (const auto& cand : req.z0)
                if (!cand.is_zero()) {
                    z0 = cand.to_complex();
                    break;
                }
            HolonomyEstimate h = holonomy_map(g, z0, default_sample_grid());
            OrbitVerdict v = periodicity_test(h, req.max_period, req.tol);
            json ev = json::array();
            for (double d : v.evidence) ev.push_back(d);
            json r{{"z0_re", z0.real()},
                   {"z0_im", z0.imag()},
                   {"samples", h.samples.size()},
                   {"error_bound", h.error_bound},
                   {"verdict", to_string(v.kind)},
                   {"deviation_trace", ev}};
            if (v.kind == OrbitKind::periodic) r["period"] = v.period;
            return r;
        });
    }
};

void render_task_text(std::ostringstream& out, const std::string& name, const json& t) {
    out << name << ":\n";
    std::string status = t.value("status", "ok");
    if (status != "ok") {
        out << "  status: " << status;
        if (t.contains("message")) out << " (" << t["message"].get<std::string>() << ")";
        out << "\n";
        if (status != "budget") return;
    }
    if (name == "star") {
        out << "  condition holds: " << (t.value("holds", false) ? "yes" : "no") << "\n";
        if (t.contains("lambda_X"))
            out << "  lambda(X) = " << t["lambda_X"].get<std::string>() << " (slot "
                << t["distinguished_index"].get<int>() << ")\n";
    } else if (name == "resonances") {
        out << "  bound " << t["degree_bound"].get<int>() << ": " << t["count"].get<size_t>()
            << " resonant multi-indices\n";
        for (const auto& idx : t["indices"])
            out << "    (" << idx[0].get<int>() << "," << idx[1].get<int>() << "," << idx[2].get<int>()
                << ")\n";
    } else if (name == "first_integral" && t.contains("N")) {
        auto idx = [](const json& a) {
            return "(" + std::to_string(a[0].get<int>()) + "," + std::to_string(a[1].get<int>()) + "," +
                   std::to_string(a[2].get<int>()) + ")";
        };
        out << "  F = (x^N, x^M) with N=" << idx(t["N"]) << " M=" << idx(t["M"]) << "\n";
        out << "  linear residuals: " << t["linear_residuals"][0].get<std::string>() << ", "
            << t["linear_residuals"][1].get<std::string>() << "; transversal: "
            << (t["transversal"].get<bool>() ? "yes" : "no") << "\n";
        out << "  residuals against the full field zero: "
            << (t["field_residuals_zero"].get<bool>() ? "yes" : "no") << "\n";
    } else if (name == "meromorphic_invariant" && t.contains("exponent")) {
        out << "  E = (" << t["exponent"][0].get<long>() << "," << t["exponent"][1].get<long>() << ","
            << t["exponent"][2].get<long>() << "), adapted: " << (t["adapted"].get<bool>() ? "yes" : "no")
            << "\n";
    } else if (name == "distribution" && t.contains("residual_order")) {
        out << "  solved to order " << t["solve_order"].get<int>() << ", residual order "
            << t["residual_order"].get<int>() << ", obstructions " << t["obstructions"].size() << "\n";
        out << "  tangency residual zero: " << (t["tangency_residual_zero"].get<bool>() ? "yes" : "no")
            << ", integrability min degree " << t["integrability_min_degree"].get<int>() << " (order "
            << t["integrability_order"].get<int>() << ")\n";
    } else if (name == "resolution" && t.contains("dicritical")) {
        out << "  dicritical parameters: " << t["dicritical"].size() << " of "
            << t["candidates"].get<size_t>() << " candidates\n";
        for (const auto& hit : t["dicritical"]) {
            out << "  z0 = " << hit["z0"].get<std::string>() << ": " << hit["blowups"].get<int>()
                << " blow-ups, " << hit["dicritical_components"].get<size_t>()
                << " dicritical component(s)\n";
            std::istringstream tree(hit["tree_text"].get<std::string>());
            std::string line;
            while (std::getline(tree, line)) out << "    " << line << "\n";
        }
        for (const auto& f : t["failures"])
            out << "  z0 = " << f["z0"].get<std::string>() << ": failed ("
                << f["message"].get<std::string>() << ")\n";
    } else if (name == "holonomy" && t.contains("verdict")) {
        out << "  verdict: " << t["verdict"].get<std::string>();
        if (t.contains("period")) out << " with period " << t["period"].get<int>();
        out << " (" << t["samples"].get<size_t>() << " samples, error bound "
            << t["error_bound"].get<double>() << ")\n";
    }
}

} // namespace

AnalysisReport run(const AnalysisRequest& request) {
    if (request.tasks.empty()) throw ConfigError("empty task set");
    std::string source = print_field(request.field);

    Pipeline pipe(request);
    json tasks;
    auto want = [&](Task t) { return request.tasks.count(t) > 0; };
    if (want(Task::star)) tasks["star"] = pipe.star();
    if (want(Task::resonances)) tasks["resonances"] = pipe.resonances();
    if (want(Task::first_integral) || want(Task::meromorphic_invariant)) {
        json fi = pipe.first_integral();
        if (want(Task::first_integral)) tasks["first_integral"] = fi;
    }
    if (want(Task::meromorphic_invariant)) tasks["meromorphic_invariant"] = pipe.meromorphic();
    if (want(Task::distribution)) tasks["distribution"] = pipe.distribution();
    if (want(Task::resolution)) tasks["resolution"] = pipe.resolution();
    if (want(Task::holonomy)) tasks["holonomy"] = pipe.holonomy();

    std::string task_list;
    for (Task t : request.tasks) task_list += task_name(t) + ",";
    std::string hash_input = source + "|" + task_list + "|" + std::to_string(request.seed);

    json root{{"provenance",
               {{"version", kVersion},
                {"input_hash", hex64(fnv1a(hash_input))},
                {"seed", request.seed},
                {"order", request.field.order()}}},
              {"field", {{"source", source}}},
              {"tasks", tasks}};

    AnalysisReport rep;
    rep.budget_hit = pipe.budget_hit;
    rep.structured = root.dump(2);

    std::ostringstream text;
    text << "holint " << kVersion << " analysis (input hash " << root["provenance"]["input_hash"].get<std::string>()
         << ")\n";
    text << "field:\n";
    {
        std::istringstream src(source);
        std::string line;
        while (std::getline(src, line)) text << "  " << line << "\n";
    }
    for (const char* name : {"star", "resonances", "first_integral", "meromorphic_invariant",
                             "distribution", "resolution", "holonomy"})
        if (tasks.contains(name)) render_task_text(text, name, tasks[name]);
    rep.text = text.str();
    return rep;
}

} // namespace holint
