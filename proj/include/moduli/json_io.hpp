#pragma once

#include "moduli/classify.hpp"
#include "moduli/estimates.hpp"
#include "moduli/ffprobe.hpp"
#include "moduli/lattice.hpp"
#include "moduli/local_model.hpp"

#include <json.hpp>

#include <string>

namespace moduli::io {

// Key order is kept stable so identical inputs always serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

Json int_to_json(const Int& x);  // number when it fits in 64 bits, else decimal string
Int int_from_json(const Json& j);

lattice::SurfaceData surface_from_json(const Json& j);
Json surface_to_json(const lattice::SurfaceData& surface);

local_model::LocalModel model_from_json(const Json& j);
Json model_to_json(const local_model::LocalModel& model);

Json star_report_to_json(const lattice::StarReport& report);
Json verdict_to_json(const classify::Verdict& verdict);
Json type_to_json(const classify::PolystableType& type);
Json stratum_to_json(const classify::Stratum& stratum);
Json summary_to_json(const classify::SingularSummary& summary);
Json delta_report_to_json(const estimates::DeltaReport& report);
Json sweep_result_to_json(const estimates::SweepResult& result);
Json count_result_to_json(const ffprobe::CountResult& result);
Json point_to_json(const local_model::PointU& point);

Json load_json_file(const std::string& path);

}  // namespace moduli::io
