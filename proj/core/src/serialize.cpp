#include "cubeplan/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cubeplan {

using nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const ordered_json& field(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

std::string pip_to_json(const Pip& p) {
    ordered_json j;
    j["elements"] = p.elements();
    auto pairs = [&](const std::vector<std::pair<std::size_t, std::size_t>>& src) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto [a, b] : src) out.push_back({p.id(a), p.id(b)});
        std::sort(out.begin(), out.end());
        ordered_json arr = ordered_json::array();
        for (auto& [a, b] : out) arr.push_back({a, b});
        return arr;
    };
    j["covers"] = pairs(p.cover_pairs());
    j["inconsistent"] = pairs(p.minimal_inconsistent_pairs());
    return dump(j);
}

Pip pip_from_json(const std::string& text) {
    ordered_json j = parse(text);
    std::vector<std::string> elements = field(j, "elements").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> covers, incons;
    for (const auto& e : field(j, "covers")) covers.push_back({e.at(0), e.at(1)});
    for (const auto& e : field(j, "inconsistent")) incons.push_back({e.at(0), e.at(1)});
    try {
        return Pip::from_covers(std::move(elements), covers, incons);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("bad PIP description: ") + e.what());
    }
}

std::string complex_to_json(const CubeComplex& c) {
    ordered_json j;
    j["vertices"] = c.vertex_ids;
    ordered_json cubes = ordered_json::array();
    for (const auto& cube : c.cubes) {
        ordered_json rec;
        std::vector<std::string> verts;
        for (int v : cube) verts.push_back(c.vertex_ids[std::size_t(v)]);
        rec["verts"] = verts;
        cubes.push_back(rec);
    }
    j["cubes"] = cubes;
    j["root"] = c.vertex_ids[std::size_t(c.root)];
    return dump(j);
}

CubeComplex complex_from_json(const std::string& text) {
    ordered_json j = parse(text);
    CubeComplex c;
    c.vertex_ids = field(j, "vertices").get<std::vector<std::string>>();
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < c.vertex_ids.size(); ++i) {
        if (!index.emplace(c.vertex_ids[i], int(i)).second)
            throw std::invalid_argument("duplicate vertex id " + c.vertex_ids[i]);
    }
    for (const auto& rec : field(j, "cubes")) {
        std::vector<int> cube;
        for (const auto& v : field(rec, "verts")) {
            auto it = index.find(v.get<std::string>());
            if (it == index.end())
                throw std::invalid_argument("cube names unknown vertex " + v.get<std::string>());
            cube.push_back(it->second);
        }
        std::sort(cube.begin(), cube.end());
        if (cube.empty() || (cube.size() & (cube.size() - 1)) != 0)
            throw std::invalid_argument("cube vertex count must be a power of two");
        if (std::adjacent_find(cube.begin(), cube.end()) != cube.end())
            throw std::invalid_argument("cube repeats a vertex");
        if (cube.size() >= 2) c.cubes.push_back(std::move(cube));
    }
    std::sort(c.cubes.begin(), c.cubes.end());
    c.cubes.erase(std::unique(c.cubes.begin(), c.cubes.end()), c.cubes.end());
    auto root = field(j, "root").get<std::string>();
    auto it = index.find(root);
    if (it == index.end()) throw std::invalid_argument("root is not a vertex");
    c.root = it->second;
    return c;
}

std::string system_to_json(const ReconfigSystem& sys) {
    ordered_json j;
    j["graph"]["vertices"] = sys.graph.vertices;
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : sys.graph.edges)
        edges.push_back({sys.graph.vertices[std::size_t(a)], sys.graph.vertices[std::size_t(b)]});
    j["graph"]["edges"] = edges;
    j["alphabet"] = sys.alphabet;
    ordered_json gens = ordered_json::array();
    for (const auto& g : sys.generators) {
        ordered_json rec;
        std::vector<std::string> support, trace;
        for (int v : g.support) support.push_back(sys.graph.vertices[std::size_t(v)]);
        for (int v : g.trace) trace.push_back(sys.graph.vertices[std::size_t(v)]);
        rec["support"] = support;
        rec["trace"] = trace;
        ordered_json l0, l1;
        for (std::size_t k = 0; k < g.support.size(); ++k) {
            l0[support[k]] = sys.alphabet[std::size_t(g.local0[k])];
            l1[support[k]] = sys.alphabet[std::size_t(g.local1[k])];
        }
        rec["local0"] = l0;
        rec["local1"] = l1;
        gens.push_back(rec);
    }
    j["generators"] = gens;
    ordered_json seed;
    for (std::size_t v = 0; v < sys.graph.vertices.size(); ++v)
        seed[sys.graph.vertices[v]] = sys.alphabet[std::size_t(sys.seed[v])];
    j["seed"] = seed;
    return dump(j);
}

ReconfigSystem system_from_json(const std::string& text) {
    ordered_json j = parse(text);
    ReconfigSystem sys;
    const auto& graph = field(j, "graph");
    sys.graph.vertices = field(graph, "vertices").get<std::vector<std::string>>();
    std::unordered_map<std::string, int> vidx;
    for (std::size_t i = 0; i < sys.graph.vertices.size(); ++i)
        if (!vidx.emplace(sys.graph.vertices[i], int(i)).second)
            throw std::invalid_argument("duplicate graph vertex");
    auto vertex = [&](const std::string& id) {
        auto it = vidx.find(id);
        if (it == vidx.end()) throw std::invalid_argument("unknown graph vertex " + id);
        return it->second;
    };
    for (const auto& e : field(graph, "edges"))
        sys.graph.edges.push_back({vertex(e.at(0)), vertex(e.at(1))});
    sys.alphabet = field(j, "alphabet").get<std::vector<std::string>>();
    std::unordered_map<std::string, int> aidx;
    for (std::size_t i = 0; i < sys.alphabet.size(); ++i)
        if (!aidx.emplace(sys.alphabet[i], int(i)).second)
            throw std::invalid_argument("duplicate alphabet symbol");
    auto symbol = [&](const std::string& s) {
        auto it = aidx.find(s);
        if (it == aidx.end()) throw std::invalid_argument("unknown symbol " + s);
        return it->second;
    };
    int gen_no = 0;
    for (const auto& rec : field(j, "generators")) {
        Generator g;
        g.name = "g" + std::to_string(gen_no++);
        std::vector<std::pair<int, std::pair<int, int>>> cells;
        const auto& l0 = field(rec, "local0");
        const auto& l1 = field(rec, "local1");
        for (const auto& id : field(rec, "support")) {
            int v = vertex(id);
            if (!l0.contains(id.get<std::string>()) || !l1.contains(id.get<std::string>()))
                throw std::invalid_argument("local state missing support vertex " +
                                            id.get<std::string>());
            cells.push_back(
                {v, {symbol(l0.at(id.get<std::string>())), symbol(l1.at(id.get<std::string>()))}});
        }
        std::sort(cells.begin(), cells.end());
        for (auto& [v, ls] : cells) {
            g.support.push_back(v);
            g.local0.push_back(ls.first);
            g.local1.push_back(ls.second);
        }
        for (const auto& id : field(rec, "trace")) g.trace.push_back(vertex(id));
        std::sort(g.trace.begin(), g.trace.end());
        sys.generators.push_back(std::move(g));
    }
    sys.seed.assign(sys.graph.vertices.size(), 0);
    const auto& seed = field(j, "seed");
    for (std::size_t v = 0; v < sys.graph.vertices.size(); ++v) {
        if (!seed.contains(sys.graph.vertices[v]))
            throw std::invalid_argument("seed missing vertex " + sys.graph.vertices[v]);
        sys.seed[v] = symbol(seed.at(sys.graph.vertices[v]));
    }
    validate_system(sys);
    return sys;
}

namespace {

ordered_json arm_state_json(const ArmState& s) {
    ordered_json j;
    j["n"] = s.n;
    j["verticals"] = s.verticals;
    return j;
}

ArmState arm_state_from(const ordered_json& j, ArmKind kind) {
    ArmState s;
    s.n = field(j, "n").get<int>();
    s.verticals = field(j, "verticals").get<std::vector<int>>();
    if (!valid_arm_state(kind, s)) throw std::invalid_argument("invalid arm state in plan");
    return s;
}

}  // namespace

std::string plan_to_json(const Plan& plan) {
    ordered_json j;
    j["type"] = plan.kind == ArmKind::Quadrant ? "quadrant" : "strip";
    j["n"] = plan.n;
    j["start"] = arm_state_json(plan.start);
    j["goal"] = arm_state_json(plan.goal);
    j["metric"] = metric_name(plan.metric);
    j["steps"] = plan.steps;
    j["length"] = plan.steps.size();
    return dump(j);
}

Plan plan_from_json(const std::string& text) {
    ordered_json j = parse(text);
    Plan plan;
    std::string type = field(j, "type").get<std::string>();
    if (type == "quadrant")
        plan.kind = ArmKind::Quadrant;
    else if (type == "strip")
        plan.kind = ArmKind::Strip;
    else
        throw std::invalid_argument("unknown plan type " + type);
    plan.n = field(j, "n").get<int>();
    plan.start = arm_state_from(field(j, "start"), plan.kind);
    plan.goal = arm_state_from(field(j, "goal"), plan.kind);
    auto metric = parse_metric(field(j, "metric").get<std::string>());
    if (!metric) throw std::invalid_argument("unknown metric");
    plan.metric = *metric;
    plan.steps = field(j, "steps").get<std::vector<std::vector<std::string>>>();
    if (field(j, "length").get<std::size_t>() != plan.steps.size())
        throw std::invalid_argument("plan length disagrees with its steps");
    return plan;
}

std::string fvector_csv(const std::vector<std::size_t>& f) {
    std::ostringstream out;
    out << "dim,count\n";
    for (std::size_t d = 0; d < f.size(); ++d) out << d << "," << f[d] << "\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

}  // namespace cubeplan
