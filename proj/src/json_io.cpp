#include "moduli/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace moduli::io {

Json int_to_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string");
}

lattice::SurfaceData surface_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("gram") || !j.contains("ample"))
        throw std::invalid_argument("surface JSON needs kind, gram, ample");
    std::string kind = j.at("kind").get<std::string>();
    lattice::SurfaceKind k;
    if (kind == "k3")
        k = lattice::SurfaceKind::K3;
    else if (kind == "abelian")
        k = lattice::SurfaceKind::Abelian;
    else
        throw std::invalid_argument("surface kind must be \"k3\" or \"abelian\"");

    const Json& g = j.at("gram");
    if (!g.is_array() || g.empty()) throw std::invalid_argument("gram must be a non-empty array");
    Matrix<Int> gram(g.size(), g.size());
    for (std::size_t r = 0; r < g.size(); ++r) {
        if (!g[r].is_array() || g[r].size() != g.size())
            throw std::invalid_argument("gram must be square");
        for (std::size_t c = 0; c < g.size(); ++c) gram(r, c) = int_from_json(g[r][c]);
    }
    std::vector<Int> ample;
    for (const auto& x : j.at("ample")) ample.push_back(int_from_json(x));
    return lattice::SurfaceData(k, std::move(gram), std::move(ample));
}

Json surface_to_json(const lattice::SurfaceData& surface) {
    Json j;
    j["kind"] = surface.kind == lattice::SurfaceKind::K3 ? "k3" : "abelian";
    Json gram = Json::array();
    for (std::size_t r = 0; r < surface.gram.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < surface.gram.cols(); ++c)
            row.push_back(int_to_json(surface.gram(r, c)));
        gram.push_back(row);
    }
    j["gram"] = gram;
    Json ample = Json::array();
    for (const auto& x : surface.ample) ample.push_back(int_to_json(x));
    j["ample"] = ample;
    return j;
}

local_model::LocalModel model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("D"))
        throw std::invalid_argument("model JSON needs n and D");
    std::vector<int> n;
    for (const auto& x : j.at("n")) n.push_back(x.get<int>());
    const Json& d = j.at("D");
    if (!d.is_array() || d.size() != n.size())
        throw std::invalid_argument("D must be an s x s array");
    Matrix<long long> D(n.size(), n.size());
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (!d[r].is_array() || d[r].size() != n.size())
            throw std::invalid_argument("D must be an s x s array");
        for (std::size_t c = 0; c < n.size(); ++c) D(r, c) = d[r][c].get<long long>();
    }
    return local_model::make_model(std::move(n), std::move(D));
}

Json model_to_json(const local_model::LocalModel& model) {
    Json j;
    j["n"] = model.n;
    Json d = Json::array();
    for (int r = 0; r < model.s(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < model.s(); ++c) row.push_back(model.D(r, c));
        d.push_back(row);
    }
    j["D"] = d;
    j["dim_u"] = model.dim_u();
    j["dim_pg"] = model.dim_g() - 1;
    j["a"] = model.slack();
    j["expected_dim"] = local_model::expected_dim(model);
    if (model.slack() >= 2)
        j["exceptional"] = local_model::is_exceptional(model);
    else
        j["below_estimate_hypotheses"] = true;  // a < 2
    return j;
}

namespace {

std::string clause_str(lattice::ClauseStatus s) {
    switch (s) {
        case lattice::ClauseStatus::Pass: return "pass";
        case lattice::ClauseStatus::Fail: return "fail";
        case lattice::ClauseStatus::HeuristicPass: return "pass (heuristic)";
        case lattice::ClauseStatus::HeuristicFail: return "fail (heuristic)";
    }
    return "?";
}

}  // namespace

Json star_report_to_json(const lattice::StarReport& report) {
    Json j;
    j["rank_clause"] = clause_str(report.rank_clause);
    j["pairing_clause"] = clause_str(report.pairing_clause);
    j["self_pairing"] = int_to_json(report.self_pairing);
    j["heuristic_effectivity"] = report.used_effectivity_heuristic;
    j["all_pass"] = report.all_pass();
    return j;
}

Json verdict_to_json(const classify::Verdict& verdict) {
    Json j;
    j["case"] = classify::to_string(verdict.label);
    j["v0"] = lattice::format_mukai(verdict.v0);
    j["m"] = int_to_json(verdict.m);
    j["e0"] = int_to_json(verdict.e0);
    j["dim"] = int_to_json(verdict.dim_m);
    j["sing_codim"] = verdict.sing_codim ? int_to_json(*verdict.sing_codim) : Json(nullptr);
    j["locally_factorial"] =
        verdict.locally_factorial ? Json(*verdict.locally_factorial) : Json(nullptr);
    j["resolution"] = classify::to_string(verdict.resolution);
    j["notes"] = verdict.notes;
    return j;
}

Json type_to_json(const classify::PolystableType& type) {
    Json parts = Json::array();
    for (const auto& [m, n] : type.parts) parts.push_back(Json::array({m, n}));
    return parts;
}

Json stratum_to_json(const classify::Stratum& stratum) {
    Json j;
    j["type"] = type_to_json(stratum.type);
    j["dim"] = int_to_json(stratum.dim);
    j["codim"] = int_to_json(stratum.codim);
    return j;
}

Json summary_to_json(const classify::SingularSummary& summary) {
    Json j;
    Json comps = Json::array();
    for (const auto& c : summary.components) comps.push_back(stratum_to_json(c));
    j["components"] = comps;
    Json strata = Json::array();
    for (const auto& s : summary.strata) strata.push_back(stratum_to_json(s));
    j["strata"] = strata;
    j["min_codim"] = int_to_json(summary.min_codim);
    return j;
}

Json delta_report_to_json(const estimates::DeltaReport& report) {
    Json j;
    j["n"] = report.n;
    Json d = Json::array();
    for (std::size_t r = 0; r < report.D.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < report.D.cols(); ++c) row.push_back(report.D(r, c));
        d.push_back(row);
    }
    j["D"] = d;
    j["a"] = report.slack;
    j["splits"] = report.split_count;
    j["gradings"] = report.grading_count;
    j["min_delta"] = report.min_delta ? Json(*report.min_delta) : Json(nullptr);
    j["argmin"] = report.argmin;
    Json hits = Json::array();
    for (const auto& hit : report.hits) {
        Json h;
        h["kind"] = hit.kind == estimates::ExceptionalHit::Kind::Split ? "split" : "grading";
        h["at"] = hit.description;
        h["delta"] = hit.delta;
        hits.push_back(h);
    }
    j["exceptional_hits"] = hits;
    j["forms_agree"] = report.all_forms_agree;
    j["violations"] = report.violations;
    j["notes"] = report.notes;
    j["ok"] = report.ok();
    return j;
}

Json sweep_result_to_json(const estimates::SweepResult& result) {
    Json j;
    j["dimension_vectors"] = result.vectors;
    j["decompositions"] = result.decompositions;
    j["grid_models"] = result.grid_models;
    j["grid_evaluations"] = result.grid_evaluations;
    j["sampled_models"] = result.sampled_models;
    j["min_delta"] = result.min_delta;
    j["exceptional_patterns"] = result.exceptional_patterns;
    j["violations"] = result.violations;
    j["notes"] = result.notes;
    j["ok"] = result.ok();
    return j;
}

Json count_result_to_json(const ffprobe::CountResult& result) {
    Json j;
    j["q"] = result.q;
    j["dim_u"] = result.dim_u;
    j["total_points"] = result.total_points;
    j["solutions"] = result.solutions;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", result.log_dim_estimate);
    j["log_q_solutions"] = std::string(buf);
    j["strategy"] = result.strategy_used;
    return j;
}

Json point_to_json(const local_model::PointU& point) {
    Json j;
    j["scalar"] = "rational";
    j["n"] = point.n;
    const int s = static_cast<int>(point.n.size());
    Json blocks = Json::array();
    std::size_t off = 0;
    for (int i = 0; i < s; ++i)
        for (int jdx = 0; jdx < s; ++jdx) {
            Json block;
            block["i"] = i;
            block["j"] = jdx;
            Json slices = Json::array();
            for (long long k = 0; k < point.dims(i, jdx); ++k, ++off) {
                const auto& m = point.slices[off];
                Json rows = Json::array();
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    Json row = Json::array();
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        row.push_back(moduli::to_string(m(r, c)));
                    rows.push_back(row);
                }
                slices.push_back(rows);
            }
            block["slices"] = slices;
            blocks.push_back(block);
        }
    j["blocks"] = blocks;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace moduli::io
