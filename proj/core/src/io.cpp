#include "prosimpl/io.hpp"

#include <fstream>

namespace prosimpl::io {

namespace {

const json& need(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

std::string need_string(const json& j, const char* key, const char* what) {
    const json& v = need(j, key, what);
    if (!v.is_string())
        throw ValidationError(std::string(what) + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

std::string join_path(const std::string& dir, const std::string& rel) {
    if (dir.empty() || rel.empty() || rel.front() == '/') return rel;
    return dir + "/" + rel;
}

} // namespace

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

json resolve_ref(const json& j, const std::string& base_dir, std::string& next_dir) {
    if (j.is_string()) {
        const std::string path = join_path(base_dir, j.get<std::string>());
        next_dir = dir_of(path);
        return load_file(path);
    }
    next_dir = base_dir;
    return j;
}

// --- serialization -----------------------------------------------------------

json to_json(const SimplexRef& r) {
    return json{{"degens", r.word}, {"base", r.base}};
}

json to_json(const FinSSet& X) {
    json out;
    json levels = json::array();
    for (const auto& level : X.simplices) levels.push_back(level);
    out["simplices"] = std::move(levels);
    json faces = json::object();
    for (std::size_t n = 1; n < X.simplices.size(); ++n)
        for (const auto& id : X.simplices[n]) {
            json fs = json::array();
            for (const auto& r : X.faces.at(id)) fs.push_back(to_json(r));
            faces[id] = std::move(fs);
        }
    out["faces"] = std::move(faces);
    if (!X.complete()) out["cap"] = X.cap;
    if (X.kan) out["kan"] = true;
    return out;
}

json to_json(const SMap& f) {
    json out;
    out["source"] = to_json(f.source);
    out["target"] = to_json(f.target);
    json on = json::object();
    for (const auto& level : f.source.simplices)
        for (const auto& id : level) on[id] = to_json(f.on.at(id));
    out["on"] = std::move(on);
    return out;
}

json to_json(const SimplicialComplex& K) {
    return json{{"vertices", K.vertices}, {"facets", K.facets}};
}

json to_json(const FinCategory& C) {
    json out;
    out["objects"] = C.objects;
    json mors = json::array();
    for (const auto& m : C.morphisms)
        mors.push_back(json{{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
    out["morphisms"] = std::move(mors);
    json comp = json::array();
    for (const auto& [pair, gf] : C.table)
        comp.push_back(json::array({pair.first, pair.second, gf}));
    out["compose"] = std::move(comp);
    json ids = json::object();
    for (const auto& o : C.objects) ids[o] = C.identity.at(o);
    out["identities"] = std::move(ids);
    return out;
}

json to_json(const Functor& F) {
    json out;
    out["source"] = to_json(F.source);
    out["target"] = to_json(F.target);
    out["on_objects"] = F.on_objects;
    out["on_morphisms"] = F.on_morphisms;
    return out;
}

json to_json(const Diagram& X) {
    json out;
    out["index"] = to_json(X.index);
    json objs = json::object();
    for (const auto& o : X.index.objects) objs[o] = to_json(X.objects.at(o));
    out["objects"] = std::move(objs);
    json arr = json::object();
    for (const auto& [m, f] : X.arrows) arr[m] = to_json(f);
    out["arrows"] = std::move(arr);
    return out;
}

json to_json(const ProMap& p) {
    json out;
    out["alpha"] = to_json(p.alpha);
    out["X"] = to_json(p.X);
    out["Y"] = to_json(p.Y);
    json th = json::object();
    for (const auto& [j, f] : p.theta) th[j] = to_json(f);
    out["theta"] = std::move(th);
    return out;
}

json to_json(const FibrantTestObject& Z) {
    json out;
    out["name"] = Z.name;
    if (Z.groupoid)
        out["groupoid"] = to_json(*Z.groupoid);
    else {
        out["sset"] = to_json(Z.fixed);
        out["assume_fibrant"] = true;
    }
    return out;
}

// --- parsing -----------------------------------------------------------------

SimplexRef ref_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("face record: expected an object");
    SimplexRef r;
    const json& w = need(j, "degens", "face record");
    if (!w.is_array()) throw ValidationError("face record: \"degens\" must be an array");
    for (const auto& v : w) {
        if (!v.is_number_integer())
            throw ValidationError("face record: degeneracy indices must be integers");
        r.word.push_back(v.get<int>());
    }
    r.base = need_string(j, "base", "face record");
    return r;
}

FinSSet sset_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("simplicial set: expected an object");
    FinSSet X;
    const json& levels = need(body, "simplices", "simplicial set");
    if (!levels.is_array())
        throw ValidationError("simplicial set: \"simplices\" must be an array");
    for (const auto& level : levels) {
        X.simplices.emplace_back();
        if (!level.is_array())
            throw ValidationError("simplicial set: each dimension must be an array of ids");
        for (const auto& id : level) {
            if (!id.is_string())
                throw ValidationError("simplicial set: simplex ids must be strings");
            X.simplices.back().push_back(id.get<std::string>());
        }
    }
    const json& faces = need(body, "faces", "simplicial set");
    if (!faces.is_object())
        throw ValidationError("simplicial set: \"faces\" must be an object");
    for (const auto& [id, fs] : faces.items()) {
        if (!fs.is_array())
            throw ValidationError("simplicial set: faces of \"" + id + "\" must be an array");
        std::vector<SimplexRef> v;
        for (const auto& r : fs) v.push_back(ref_from_json(r));
        X.faces[id] = std::move(v);
    }
    if (body.contains("cap")) {
        if (!body["cap"].is_number_integer())
            throw ValidationError("simplicial set: \"cap\" must be an integer");
        X.cap = body["cap"].get<int>();
    }
    if (body.contains("kan")) {
        if (!body["kan"].is_boolean())
            throw ValidationError("simplicial set: \"kan\" must be a boolean");
        X.kan = body["kan"].get<bool>();
    }
    X.reindex();
    for (auto& [id, fs] : X.faces)
        for (auto& r : fs) {
            auto it = X.dim_of.find(r.base);
            if (it == X.dim_of.end())
                throw ValidationError("simplicial set: face of \"" + id +
                                      "\" references unknown simplex \"" + r.base + "\"");
            r.dim = it->second + static_cast<int>(r.word.size());
        }
    for (std::size_t n = 1; n < X.simplices.size(); ++n)
        for (const auto& id : X.simplices[n]) {
            auto it = X.faces.find(id);
            if (it == X.faces.end())
                throw ValidationError("simplicial set: simplex \"" + id + "\" has no face list");
            if (it->second.size() != n + 1)
                throw ValidationError("simplicial set: simplex \"" + id + "\" needs " +
                                      std::to_string(n + 1) + " faces");
        }
    return X;
}

SMap smap_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("map: expected an object");
    SMap f;
    f.source = sset_from_json(need(body, "source", "map"), dir);
    f.target = sset_from_json(need(body, "target", "map"), dir);
    const json& on = need(body, "on", "map");
    if (!on.is_object()) throw ValidationError("map: \"on\" must be an object");
    for (const auto& [id, rec] : on.items()) {
        SimplexRef r = ref_from_json(rec);
        auto it = f.target.dim_of.find(r.base);
        if (it == f.target.dim_of.end())
            throw ValidationError("map: image of \"" + id + "\" references unknown simplex \"" +
                                  r.base + "\"");
        r.dim = it->second + static_cast<int>(r.word.size());
        f.on[id] = r;
    }
    return f;
}

SimplicialComplex complex_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("complex: expected an object");
    SimplicialComplex K;
    const json& vs = need(body, "vertices", "complex");
    if (!vs.is_array()) throw ValidationError("complex: \"vertices\" must be an array");
    for (const auto& v : vs) {
        if (!v.is_string()) throw ValidationError("complex: vertex ids must be strings");
        K.vertices.push_back(v.get<std::string>());
    }
    const json& fs = need(body, "facets", "complex");
    if (!fs.is_array()) throw ValidationError("complex: \"facets\" must be an array");
    for (const auto& f : fs) {
        if (!f.is_array()) throw ValidationError("complex: each facet must be an array");
        std::vector<std::string> facet;
        for (const auto& v : f) {
            if (!v.is_string()) throw ValidationError("complex: facet entries must be strings");
            facet.push_back(v.get<std::string>());
        }
        K.facets.push_back(std::move(facet));
    }
    return K;
}

FinCategory category_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("category: expected an object");
    FinCategory C;
    for (const auto& o : need(body, "objects", "category")) {
        if (!o.is_string()) throw ValidationError("category: object ids must be strings");
        C.objects.push_back(o.get<std::string>());
    }
    for (const auto& m : need(body, "morphisms", "category"))
        C.morphisms.push_back({need_string(m, "id", "morphism"), need_string(m, "src", "morphism"),
                               need_string(m, "dst", "morphism")});
    for (const auto& t : need(body, "compose", "category")) {
        if (!t.is_array() || t.size() != 3)
            throw ValidationError("category: compose entries must be [g, f, g∘f] triples");
        C.table[{t[0].get<std::string>(), t[1].get<std::string>()}] = t[2].get<std::string>();
    }
    for (const auto& [o, id] : need(body, "identities", "category").items())
        C.identity[o] = id.get<std::string>();
    return C;
}

Functor functor_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("functor: expected an object");
    Functor F;
    F.source = category_from_json(need(body, "source", "functor"), dir);
    F.target = category_from_json(need(body, "target", "functor"), dir);
    for (const auto& [k, v] : need(body, "on_objects", "functor").items())
        F.on_objects[k] = v.get<std::string>();
    for (const auto& [k, v] : need(body, "on_morphisms", "functor").items())
        F.on_morphisms[k] = v.get<std::string>();
    return F;
}

Diagram diagram_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("diagram: expected an object");
    Diagram X;
    X.index = category_from_json(need(body, "index", "diagram"), dir);
    for (const auto& [o, ref] : need(body, "objects", "diagram").items())
        X.objects[o] = sset_from_json(ref, dir);
    if (body.contains("arrows"))
        for (const auto& [m, ref] : body["arrows"].items())
            X.arrows[m] = smap_from_json(ref, dir);
    return X;
}

ProMap promap_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("pro-map: expected an object");
    ProMap p;
    p.alpha = functor_from_json(need(body, "alpha", "pro-map"), dir);
    p.X = diagram_from_json(need(body, "X", "pro-map"), dir);
    p.Y = diagram_from_json(need(body, "Y", "pro-map"), dir);
    for (const auto& [o, ref] : need(body, "theta", "pro-map").items())
        p.theta[o] = smap_from_json(ref, dir);
    return p;
}

FibrantTestObject fibrant_from_json(const json& j, const std::string& base_dir) {
    std::string dir;
    const json body = resolve_ref(j, base_dir, dir);
    if (!body.is_object()) throw ValidationError("test object: expected an object");
    FibrantTestObject Z;
    Z.name = need_string(body, "name", "test object");
    if (body.contains("groupoid")) {
        Z.groupoid = category_from_json(body["groupoid"], dir);
        return Z;
    }
    if (!body.contains("sset") || !body.value("assume_fibrant", false))
        throw ValidationError(
            "test object: needs a \"groupoid\" or an \"sset\" flagged \"assume_fibrant\"");
    Z.fixed = sset_from_json(body["sset"], dir);
    return Z;
}

// --- files -------------------------------------------------------------------

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace prosimpl::io
