#include "arbormax/instance.hpp"

#include <cstdio>

#include <json.hpp>

namespace arbormax {

using nlohmann::json;

namespace {

// Fixed float formatting: every emitted double is rounded through "%.12g"
// so identical runs serialize identically.
double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

json num(double x) { return json(round12(x)); }

struct FieldErrors {
    std::vector<std::string> errors;
    void add(const std::string& msg) { errors.push_back(msg); }
    void raise_if_any() const {
        if (errors.empty()) return;
        std::string msg = "instance validation failed:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ParseError(msg);
    }
};

}  // namespace

std::unique_ptr<ValueOracle> Instance::make_oracle() const {
    switch (objective) {
        case Objective::Coverage:
            return std::make_unique<CoverageFunction>(n, universe_size, coverage_sets,
                                                      element_weights);
        case Objective::Additive:
            return std::make_unique<AdditiveFunction>(vertex_weights);
        case Objective::Explicit:
            return std::make_unique<ExplicitFunction>(n, table);
    }
    throw std::logic_error("Instance: unknown objective");
}

Digraph Instance::graph() const {
    return directed ? Digraph(n, edges) : bidirect(n, edges);
}

Instance parse_instance(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("instance is not valid JSON: ") + e.what());
    }
    FieldErrors errs;
    if (!j.is_object()) {
        errs.add("top level: expected an object");
        errs.raise_if_any();
    }

    Instance inst;
    if (!j.contains("directed") || !j["directed"].is_boolean())
        errs.add("directed: required boolean");
    else
        inst.directed = j["directed"].get<bool>();

    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        errs.add("n: required integer >= 1");
    else
        inst.n = j["n"].get<int>();

    if (!j.contains("edges") || !j["edges"].is_array()) {
        errs.add("edges: required array of [u, v] pairs");
    } else {
        const auto& arr = j["edges"];
        for (size_t i = 0; i < arr.size(); ++i) {
            const auto& e = arr[i];
            std::string at = "edges[" + std::to_string(i) + "]";
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                errs.add(at + ": expected a pair of integers");
                continue;
            }
            int u = e[0].get<int>();
            int v = e[1].get<int>();
            if (inst.n > 0 && (u < 0 || u >= inst.n || v < 0 || v >= inst.n)) {
                errs.add(at + ": endpoint out of range [0, " + std::to_string(inst.n) + ")");
                continue;
            }
            inst.edges.push_back({u, v});
        }
    }

    if (!j.contains("k") || !j["k"].is_number_integer() || j["k"].get<long long>() < 1)
        errs.add("k: required integer >= 1");
    else
        inst.k = j["k"].get<int>();

    if (j.contains("root")) {
        if (!j["root"].is_number_integer())
            errs.add("root: expected an integer");
        else {
            int r = j["root"].get<int>();
            if (inst.n > 0 && (r < 0 || r >= inst.n))
                errs.add("root: out of range [0, " + std::to_string(inst.n) + ")");
            else
                inst.root = r;
        }
    }

    if (!j.contains("objective") || !j["objective"].is_object()) {
        errs.add("objective: required object");
        errs.raise_if_any();
    }
    const auto& obj = j["objective"];
    std::string type = obj.contains("type") && obj["type"].is_string()
                           ? obj["type"].get<std::string>()
                           : "";
    if (type == "coverage") {
        inst.objective = Instance::Objective::Coverage;
        if (!obj.contains("universe_size") || !obj["universe_size"].is_number_integer() ||
            obj["universe_size"].get<long long>() < 0)
            errs.add("objective.universe_size: required integer >= 0");
        else
            inst.universe_size = obj["universe_size"].get<int>();
        if (!obj.contains("sets") || !obj["sets"].is_array() ||
            static_cast<int>(obj["sets"].size()) != inst.n) {
            errs.add("objective.sets: required array with one element list per vertex");
        } else {
            for (size_t v = 0; v < obj["sets"].size(); ++v) {
                std::vector<int> lst;
                std::string at = "objective.sets[" + std::to_string(v) + "]";
                if (!obj["sets"][v].is_array()) {
                    errs.add(at + ": expected an array of element ids");
                    inst.coverage_sets.push_back({});
                    continue;
                }
                for (const auto& e : obj["sets"][v]) {
                    if (!e.is_number_integer()) {
                        errs.add(at + ": element ids must be integers");
                        continue;
                    }
                    int id = e.get<int>();
                    if (id < 0 || id >= inst.universe_size)
                        errs.add(at + ": element id " + std::to_string(id) +
                                 " out of range [0, " + std::to_string(inst.universe_size) + ")");
                    else
                        lst.push_back(id);
                }
                inst.coverage_sets.push_back(std::move(lst));
            }
        }
        if (obj.contains("weights")) {
            if (!obj["weights"].is_array() ||
                static_cast<int>(obj["weights"].size()) != inst.universe_size) {
                errs.add("objective.weights: expected one weight per universe element");
            } else {
                for (size_t i = 0; i < obj["weights"].size(); ++i) {
                    if (!obj["weights"][i].is_number() || obj["weights"][i].get<double>() < 0)
                        errs.add("objective.weights[" + std::to_string(i) +
                                 "]: expected a number >= 0");
                    else
                        inst.element_weights.push_back(obj["weights"][i].get<double>());
                }
            }
        }
    } else if (type == "additive") {
        inst.objective = Instance::Objective::Additive;
        if (!obj.contains("weights") || !obj["weights"].is_array() ||
            static_cast<int>(obj["weights"].size()) != inst.n) {
            errs.add("objective.weights: required array with one weight per vertex");
        } else {
            for (size_t i = 0; i < obj["weights"].size(); ++i) {
                if (!obj["weights"][i].is_number() || obj["weights"][i].get<double>() < 0)
                    errs.add("objective.weights[" + std::to_string(i) +
                             "]: expected a number >= 0");
                else
                    inst.vertex_weights.push_back(obj["weights"][i].get<double>());
            }
        }
    } else if (type == "explicit") {
        inst.objective = Instance::Objective::Explicit;
        if (inst.n > 16) errs.add("objective: explicit tables require n <= 16");
        size_t want = inst.n <= 16 ? (size_t{1} << inst.n) : 0;
        if (!obj.contains("values") || !obj["values"].is_array() ||
            obj["values"].size() != want) {
            errs.add("objective.values: required array of 2^n numbers");
        } else {
            for (const auto& e : obj["values"]) {
                if (!e.is_number())
                    errs.add("objective.values: entries must be numbers");
                else
                    inst.table.push_back(e.get<double>());
            }
        }
    } else {
        errs.add("objective.type: expected \"coverage\", \"additive\" or \"explicit\"");
    }

    errs.raise_if_any();
    return inst;
}

std::string emit_instance(const Instance& inst) {
    json j;
    j["directed"] = inst.directed;
    j["n"] = inst.n;
    json edges = json::array();
    for (const auto& [u, v] : inst.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    json obj;
    switch (inst.objective) {
        case Instance::Objective::Coverage: {
            obj["type"] = "coverage";
            obj["universe_size"] = inst.universe_size;
            json sets = json::array();
            for (const auto& lst : inst.coverage_sets) sets.push_back(lst);
            obj["sets"] = std::move(sets);
            if (!inst.element_weights.empty()) {
                json ws = json::array();
                for (double w : inst.element_weights) ws.push_back(num(w));
                obj["weights"] = std::move(ws);
            }
            break;
        }
        case Instance::Objective::Additive: {
            obj["type"] = "additive";
            json ws = json::array();
            for (double w : inst.vertex_weights) ws.push_back(num(w));
            obj["weights"] = std::move(ws);
            break;
        }
        case Instance::Objective::Explicit: {
            obj["type"] = "explicit";
            json vs = json::array();
            for (double v : inst.table) vs.push_back(num(v));
            obj["values"] = std::move(vs);
            break;
        }
    }
    j["objective"] = std::move(obj);
    j["k"] = inst.k;
    if (inst.root) j["root"] = *inst.root;
    return j.dump(2) + "\n";
}

namespace {

json trace_json(const AlgoTrace& t) {
    json j;
    j["updates"] = t.updates;
    j["subroutine_calls"] = t.subroutine_calls;
    j["queries"] = t.queries;
    j["early_stopped"] = t.early_stopped;
    json its = json::array();
    for (const auto& it : t.iterations) {
        json rec;
        rec["i"] = it.index;
        rec["root"] = it.chosen_root;
        rec["size"] = it.chosen_size;
        rec["gain"] = num(it.gain);
        rec["remaining"] = it.remaining;
        rec["c_min"] = it.c_min;
        rec["c_max"] = it.c_max;
        its.push_back(std::move(rec));
    }
    j["iterations"] = std::move(its);
    return j;
}

}  // namespace

std::string emit_report(const SolveReport& rep) {
    json j;
    j["algorithm"] = rep.algorithm;
    json params;
    params["k"] = rep.k;
    if (rep.d) params["d"] = *rep.d;
    if (rep.q) params["q"] = num(*rep.q);
    if (rep.delta) params["delta"] = *rep.delta;
    if (rep.radius) params["radius"] = *rep.radius;
    if (rep.root) params["root"] = *rep.root;
    params["faithful"] = rep.faithful;
    if (rep.subroutine) params["subroutine"] = *rep.subroutine;
    if (rep.epsilon) params["epsilon"] = num(*rep.epsilon);
    j["params"] = std::move(params);

    json sol;
    sol["root"] = rep.solution_root;
    sol["vertices"] = rep.vertices;
    json edges = json::array();
    for (const auto& [p, c] : rep.tree_edges) edges.push_back({p, c});
    sol["edges"] = std::move(edges);
    sol["value"] = num(rep.value);
    sol["m"] = rep.m;
    j["solution"] = std::move(sol);

    json feas;
    feas["within_k"] = rep.within_k;
    if (rep.within_delta) feas["within_delta"] = *rep.within_delta;
    j["feasibility"] = std::move(feas);

    json queries;
    queries["total"] = rep.total_queries;
    json per = json::array();
    for (const auto& g : rep.per_guess) {
        json rec;
        rec["root"] = g.root;
        rec["radius"] = g.radius;
        rec["value"] = num(g.value);
        rec["queries"] = g.queries;
        rec["edges"] = g.edges;
        per.push_back(std::move(rec));
    }
    queries["per_guess"] = std::move(per);
    j["queries"] = std::move(queries);

    if (rep.trace) j["trace"] = trace_json(*rep.trace);
    if (rep.opt) {
        json ex;
        ex["opt"] = num(*rep.opt);
        if (rep.r_star) ex["r_star"] = *rep.r_star;
        if (rep.ratio) ex["ratio"] = num(*rep.ratio);
        if (rep.sharp_bound) ex["sharp_bound"] = num(*rep.sharp_bound);
        if (rep.epsilon_bound) ex["epsilon_bound"] = num(*rep.epsilon_bound);
        j["exact"] = std::move(ex);
    }
    j["wall_time_ms"] = num(rep.wall_time_ms);
    return j.dump(2) + "\n";
}

std::string report_determinism_key(const std::string& report_bytes) {
    json j = json::parse(report_bytes);
    j.erase("wall_time_ms");
    return j.dump(2);
}

}  // namespace arbormax
