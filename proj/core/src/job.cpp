#include "lasuscc/job.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "lasuscc/errors.hpp"
#include "lasuscc/fcidump.hpp"

namespace lasuscc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& msg) {
    throw ValidationError(fmt::format("{}: {}", pointer.empty() ? "/" : pointer, msg));
}

void reject_unknown(const json& obj, const std::string& pointer, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) fail(pointer + "/" + key, "unknown key");
    }
}

double get_number(const json& v, const std::string& pointer) {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "expected a finite number");
    return x;
}

int get_int(const json& v, const std::string& pointer) {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    return v.get<int>();
}

Geometry parse_geometry(const json& g, const std::string& ptr) {
    if (!g.is_object()) fail(ptr, "expected an object");
    reject_unknown(g, ptr, {"atoms", "charge", "spin_multiplicity"});
    if (!g.contains("atoms") || !g["atoms"].is_array() || g["atoms"].empty()) {
        fail(ptr + "/atoms", "expected a non-empty array of [element, [x, y, z]]");
    }
    Geometry geo;
    for (std::size_t i = 0; i < g["atoms"].size(); ++i) {
        const auto& a = g["atoms"][i];
        const std::string ap = fmt::format("{}/atoms/{}", ptr, i);
        if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_array() || a[1].size() != 3) {
            fail(ap, "expected [element, [x, y, z]]");
        }
        Atom atom{a[0].get<std::string>(), {}};
        for (std::size_t c = 0; c < 3; ++c) atom.position[c] = get_number(a[1][c], fmt::format("{}/1/{}", ap, c));
        geo.atoms.push_back(atom);
    }
    if (g.contains("charge")) geo.charge = get_int(g["charge"], ptr + "/charge");
    if (g.contains("spin_multiplicity")) {
        geo.spin_multiplicity = get_int(g["spin_multiplicity"], ptr + "/spin_multiplicity");
        if (geo.spin_multiplicity < 1) fail(ptr + "/spin_multiplicity", "must be >= 1");
    }
    return geo;
}

FragmentLayout parse_fragments(const json& f, const std::string& ptr) {
    if (!f.is_array() || f.empty()) fail(ptr, "expected a non-empty array of fragments");
    FragmentLayout layout;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto& fr = f[k];
        const std::string fp = fmt::format("{}/{}", ptr, k);
        if (!fr.is_object()) fail(fp, "expected an object");
        reject_unknown(fr, fp, {"orbitals", "n_alpha", "n_beta"});
        for (const char* key : {"orbitals", "n_alpha", "n_beta"})
            if (!fr.contains(key)) fail(fp + "/" + key, "missing required key");
        Fragment frag;
        if (!fr["orbitals"].is_array() || fr["orbitals"].empty()) fail(fp + "/orbitals", "expected a non-empty array");
        for (std::size_t i = 0; i < fr["orbitals"].size(); ++i)
            frag.orbitals.push_back(get_int(fr["orbitals"][i], fmt::format("{}/orbitals/{}", fp, i)));
        frag.n_alpha = get_int(fr["n_alpha"], fp + "/n_alpha");
        frag.n_beta = get_int(fr["n_beta"], fp + "/n_beta");
        layout.fragments.push_back(std::move(frag));
    }
    // Report overlaps with both fragment names before the generic checks.
    std::map<int, std::size_t> owner;
    for (std::size_t k = 0; k < layout.fragments.size(); ++k)
        for (int p : layout.fragments[k].orbitals) {
            auto [it, inserted] = owner.emplace(p, k);
            if (!inserted) {
                fail(fmt::format("{}/{}/orbitals", ptr, k),
                     fmt::format("orbital {} is claimed by both fragment {} and fragment {}", p, it->second, k));
            }
        }
    return layout;
}

} // namespace

const char* to_string(TrotterMode mode) noexcept {
    switch (mode) {
    case TrotterMode::FirstOrder:
        return "trotter1";
    }
    return "?";
}

JobConfig parse_job(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("job file is not valid JSON: {}", e.what()));
    }
    if (!j.is_object()) fail("", "job must be a JSON object");
    reject_unknown(j, "", {"schema_version", "name", "geometry", "fcidump", "fragments", "epsilon_ladder", "optimizer",
                           "trotter", "warm_start", "output"});

    JobConfig job;
    if (j.contains("schema_version") && get_int(j["schema_version"], "/schema_version") != 1) {
        fail("/schema_version", "only schema_version 1 is supported");
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail("/name", "expected a string");
        job.name = j["name"].get<std::string>();
    }

    const bool has_geo = j.contains("geometry"), has_dump = j.contains("fcidump");
    if (has_geo == has_dump) fail("", "exactly one of 'geometry' or 'fcidump' is required");
    if (has_geo) job.geometry = parse_geometry(j["geometry"], "/geometry");
    if (has_dump) {
        if (!j["fcidump"].is_string()) fail("/fcidump", "expected a path string");
        std::filesystem::path p = j["fcidump"].get<std::string>();
        job.fcidump = p.is_relative() ? base_dir / p : p;
    }

    if (!j.contains("fragments")) fail("/fragments", "missing required key");
    job.layout = parse_fragments(j["fragments"], "/fragments");

    if (j.contains("epsilon_ladder")) {
        const auto& e = j["epsilon_ladder"];
        if (!e.is_array() || e.empty()) fail("/epsilon_ladder", "expected a non-empty array");
        job.epsilon_ladder.clear();
        for (std::size_t i = 0; i < e.size(); ++i) {
            const std::string ep = fmt::format("/epsilon_ladder/{}", i);
            double x = 0.0;
            if (e[i].is_string() && (e[i] == "inf" || e[i] == "Infinity")) x = INFINITY;
            else if (e[i].is_number()) x = e[i].get<double>();
            else fail(ep, "expected a number or \"inf\"");
            if (std::isnan(x) || x < 0.0) fail(ep, "thresholds must be >= 0");
            if (!job.epsilon_ladder.empty() && !(x < job.epsilon_ladder.back())) fail(ep, "ladder must be strictly decreasing");
            job.epsilon_ladder.push_back(x);
        }
    }

    if (j.contains("optimizer")) {
        const auto& o = j["optimizer"];
        if (!o.is_object()) fail("/optimizer", "expected an object");
        reject_unknown(o, "/optimizer", {"gradient_tolerance", "energy_tolerance", "max_iterations"});
        if (o.contains("gradient_tolerance")) job.optimizer.gradient_tolerance = get_number(o["gradient_tolerance"], "/optimizer/gradient_tolerance");
        if (o.contains("energy_tolerance")) job.optimizer.energy_tolerance = get_number(o["energy_tolerance"], "/optimizer/energy_tolerance");
        if (o.contains("max_iterations")) job.optimizer.max_iterations = get_int(o["max_iterations"], "/optimizer/max_iterations");
        if (job.optimizer.gradient_tolerance <= 0.0) fail("/optimizer/gradient_tolerance", "must be > 0");
        if (job.optimizer.energy_tolerance < 0.0) fail("/optimizer/energy_tolerance", "must be >= 0");
        if (job.optimizer.max_iterations <= 0) fail("/optimizer/max_iterations", "must be > 0");
    }

    if (j.contains("trotter")) {
        if (j["trotter"] != "trotter1") fail("/trotter", "only \"trotter1\" (first-order product) is supported");
    }
    if (j.contains("warm_start")) {
        if (!j["warm_start"].is_boolean()) fail("/warm_start", "expected true or false");
        job.warm_start = j["warm_start"].get<bool>();
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) fail("/output", "expected an object");
        reject_unknown(o, "/output", {"csv", "report"});
        for (const char* key : {"csv", "report"}) {
            if (!o.contains(key)) continue;
            if (!o[key].is_string()) fail(fmt::format("/output/{}", key), "expected a path string");
            std::filesystem::path p = o[key].get<std::string>();
            (std::string(key) == "csv" ? job.output.csv : job.output.report) = p.is_relative() ? base_dir / p : p;
        }
    }

    // Cross-checks against the Hamiltonian source.
    try {
        if (job.geometry) {
            job.layout.validate(job.geometry->atoms.size(), job.geometry->electron_count());
        } else if (std::filesystem::exists(*job.fcidump)) {
            const auto hdr = read_fcidump_header(*job.fcidump);
            job.layout.validate(hdr.norb, hdr.nelec);
            if (job.layout.n_alpha() - job.layout.n_beta() != hdr.ms2) {
                throw ValidationError(fmt::format("fragments give 2*Sz={} but the FCIDUMP has MS2={}",
                                                  job.layout.n_alpha() - job.layout.n_beta(), hdr.ms2));
            }
        } else {
            fail("/fcidump", fmt::format("file '{}' does not exist", job.fcidump->string()));
        }
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind("/", 0) == 0) throw;
        fail("/fragments", msg);
    }
    return job;
}

JobConfig read_job(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open job file '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_job(ss.str(), path.parent_path());
}

std::string job_to_json(const JobConfig& job) {
    json j;
    j["schema_version"] = 1;
    j["name"] = job.name;
    if (job.geometry) {
        json atoms = json::array();
        for (const auto& a : job.geometry->atoms)
            atoms.push_back({a.element, {a.position[0], a.position[1], a.position[2]}});
        j["geometry"] = {{"atoms", atoms}, {"charge", job.geometry->charge},
                         {"spin_multiplicity", job.geometry->spin_multiplicity}};
    }
    if (job.fcidump) j["fcidump"] = job.fcidump->string();
    json frags = json::array();
    for (const auto& f : job.layout.fragments)
        frags.push_back({{"orbitals", f.orbitals}, {"n_alpha", f.n_alpha}, {"n_beta", f.n_beta}});
    j["fragments"] = frags;
    json ladder = json::array();
    for (double e : job.epsilon_ladder) {
        if (std::isinf(e)) ladder.push_back("inf");
        else ladder.push_back(e);
    }
    j["epsilon_ladder"] = ladder;
    j["optimizer"] = {{"gradient_tolerance", job.optimizer.gradient_tolerance},
                      {"energy_tolerance", job.optimizer.energy_tolerance},
                      {"max_iterations", job.optimizer.max_iterations}};
    j["trotter"] = to_string(job.trotter);
    j["warm_start"] = job.warm_start;
    json out = json::object();
    if (job.output.csv) out["csv"] = job.output.csv->string();
    if (job.output.report) out["report"] = job.output.report->string();
    j["output"] = out;
    return j.dump(2);
}

} // namespace lasuscc
