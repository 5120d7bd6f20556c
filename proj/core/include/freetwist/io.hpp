#pragma once

// JSON encodings. Matrices are arrays of rows of 0/1 integers. Every
// *_from_json throws InvalidInput on malformed input.

#include <string>

#include <nlohmann/json.hpp>

#include "freetwist/amod.hpp"
#include "freetwist/barcx.hpp"
#include "freetwist/f2lin.hpp"
#include "freetwist/freecert.hpp"
#include "freetwist/homlat.hpp"
#include "freetwist/tw.hpp"

namespace freetwist::io {

using nlohmann::json;

json matrix_to_json(const F2Matrix& m);
F2Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

// {"side": "right", "dim": 2, "actions": [{"k": 3, "matrix": [[0,0],[1,0]]}]}
json module_to_json(const amod::AModule& m);
amod::AModule module_from_json(const json& j);

json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const json& j);

json sweep_report_to_json(const barcx::SweepReport& r);
json tw_object_to_json(const tw::TwObject& x);
json property_s_to_json(const freecert::PropertySReport& r);
json trace_to_json(const freecert::FreenessTrace& t);
json lattice_vector_to_json(const homlat::Vector& v);

json error_to_json(const std::string& kind, const std::string& message);

json read_json_file(const std::string& path);

} // namespace freetwist::io
