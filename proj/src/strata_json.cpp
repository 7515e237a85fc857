#include "moduli/strata.hpp"

#include "json.hpp"

namespace moduli {

namespace {

using json = nlohmann::ordered_json;

int get_int(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer())
        throw DomainError(std::string("stratum JSON: missing integer field \"") + key + "\"");
    return j[key].get<int>();
}

} // namespace

std::string to_canonical_json(const StratumGraph& s0)
{
    const StratumGraph s = canonical_form(s0);
    json j;
    j["g"] = s.g;
    j["h"] = s.h;
    j["n"] = s.n;
    j["m"] = s.m;
    j["interior_nodes"] = s.interior_node_count;
    j["boundary_nodes"] = s.boundary_node_count;
    j["pieces"] = json::array();
    for (const auto& p : s.pieces) {
        json jp;
        jp["kind"] = p.kind == Piece::Kind::closed ? "closed" : "bordered";
        jp["genus"] = p.genus;
        jp["circles"] = json::array();
        for (const auto& c : p.circles) {
            json jc;
            if (c.collapsed) {
                jc["collapsed"] = true;
                jc["label"] = c.label;
            } else {
                jc["slots"] = json::array();
                for (const auto& sl : c.slots) {
                    if (sl.kind == BoundarySlot::Kind::mark)
                        jc["slots"].push_back(json::array({"mark", sl.a, sl.b}));
                    else
                        jc["slots"].push_back(json::array({"end", sl.a >> 1}));
                }
                jc["gaps"] = c.gap_labels;
            }
            jp["circles"].push_back(std::move(jc));
        }
        jp["interior"] = json::array();
        for (const auto& is : p.interior) {
            if (is.kind == InteriorSlot::Kind::mark)
                jp["interior"].push_back(json::array({"mark", is.id}));
            else
                jp["interior"].push_back(json::array({"end", is.id >> 1}));
        }
        j["pieces"].push_back(std::move(jp));
    }
    j["dim"] = stratum_dim(s);
    return j.dump();
}

StratumGraph stratum_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw DomainError(std::string("stratum JSON: parse error: ") + e.what());
    }

    StratumGraph s;
    s.g = get_int(j, "g");
    s.h = get_int(j, "h");
    s.n = get_int(j, "n");
    if (!j.contains("m") || !j["m"].is_array())
        throw DomainError("stratum JSON: missing array field \"m\"");
    for (const auto& v : j["m"]) {
        if (!v.is_number_integer()) throw DomainError("stratum JSON: m entries must be integers");
        s.m.push_back(v.get<int>());
    }
    s.interior_node_count = get_int(j, "interior_nodes");
    s.boundary_node_count = get_int(j, "boundary_nodes");
    if (s.interior_node_count < 0 || s.boundary_node_count < 0)
        throw DomainError("stratum JSON: node counts must be >= 0");

    // Node ids appear exactly twice; occurrences become the two endpoints.
    std::vector<int> bocc(std::max(0, s.boundary_node_count), 0);
    std::vector<int> iocc(std::max(0, s.interior_node_count), 0);
    auto bend = [&](int v) {
        if (v < 0 || v >= s.boundary_node_count)
            throw DomainError("stratum JSON: boundary node id " + std::to_string(v)
                              + " out of range");
        if (bocc[v] >= 2)
            throw DomainError("stratum JSON: boundary node id " + std::to_string(v)
                              + " appears more than twice");
        return 2 * v + bocc[v]++;
    };
    auto iend = [&](int v) {
        if (v < 0 || v >= s.interior_node_count)
            throw DomainError("stratum JSON: interior node id " + std::to_string(v)
                              + " out of range");
        if (iocc[v] >= 2)
            throw DomainError("stratum JSON: interior node id " + std::to_string(v)
                              + " appears more than twice");
        return 2 * v + iocc[v]++;
    };

    if (!j.contains("pieces") || !j["pieces"].is_array())
        throw DomainError("stratum JSON: missing array field \"pieces\"");
    for (const auto& jp : j["pieces"]) {
        Piece p;
        const std::string kind = jp.value("kind", std::string{});
        if (kind == "closed") p.kind = Piece::Kind::closed;
        else if (kind == "bordered") p.kind = Piece::Kind::bordered;
        else throw DomainError("stratum JSON: piece kind must be \"closed\" or \"bordered\"");
        p.genus = get_int(jp, "genus");
        if (jp.contains("circles")) {
            if (!jp["circles"].is_array())
                throw DomainError("stratum JSON: \"circles\" must be an array");
            for (const auto& jc : jp["circles"]) {
                BoundaryCircle c;
                if (jc.value("collapsed", false)) {
                    c.collapsed = true;
                    c.label = get_int(jc, "label");
                } else {
                    if (!jc.contains("slots") || !jc["slots"].is_array() || !jc.contains("gaps")
                        || !jc["gaps"].is_array())
                        throw DomainError(
                            "stratum JSON: live circles need \"slots\" and \"gaps\" arrays");
                    for (const auto& js : jc["slots"]) {
                        if (!js.is_array() || js.empty() || !js[0].is_string())
                            throw DomainError("stratum JSON: malformed boundary slot");
                        const std::string tag = js[0].get<std::string>();
                        if (tag == "mark" && js.size() == 3)
                            c.slots.push_back(
                                BoundarySlot::make_mark(js[1].get<int>(), js[2].get<int>()));
                        else if (tag == "end" && js.size() == 2)
                            c.slots.push_back(BoundarySlot::make_end(bend(js[1].get<int>())));
                        else
                            throw DomainError("stratum JSON: malformed boundary slot");
                    }
                    for (const auto& gl : jc["gaps"]) c.gap_labels.push_back(gl.get<int>());
                }
                p.circles.push_back(std::move(c));
            }
        }
        if (jp.contains("interior")) {
            if (!jp["interior"].is_array())
                throw DomainError("stratum JSON: \"interior\" must be an array");
            for (const auto& js : jp["interior"]) {
                if (!js.is_array() || js.size() != 2 || !js[0].is_string())
                    throw DomainError("stratum JSON: malformed interior slot");
                const std::string tag = js[0].get<std::string>();
                if (tag == "mark") p.interior.push_back(InteriorSlot::make_mark(js[1].get<int>()));
                else if (tag == "end")
                    p.interior.push_back(InteriorSlot::make_end(iend(js[1].get<int>())));
                else throw DomainError("stratum JSON: malformed interior slot");
            }
        }
        s.pieces.push_back(std::move(p));
    }

    validate(s);
    if (j.contains("dim")) {
        const int want = get_int(j, "dim");
        if (want != stratum_dim(s))
            throw DomainError("stratum JSON: declared dim " + std::to_string(want)
                              + " but stratum has dim " + std::to_string(stratum_dim(s)));
    }
    return canonical_form(s);
}

} // namespace moduli
