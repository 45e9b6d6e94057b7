#include "dephase/state_io.hpp"

#include <fstream>
#include <sstream>

#include "dephase/error.hpp"

namespace dephase {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "state JSON: " + what);
}

void read_part(const nlohmann::json& rows, std::vector<Complex>& out, bool imaginary) {
  if (!rows.is_array() || rows.size() != 4) schema_error("expected 4 rows");
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != 4) schema_error("row " + std::to_string(r) + " must have 4 entries");
    for (std::size_t c = 0; c < 4; ++c) {
      if (!row[c].is_number()) schema_error("entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not a number");
      const double v = row[c].get<double>();
      if (imaginary) {
        out[r * 4 + c].imag(v);
      } else {
        out[r * 4 + c].real(v);
      }
    }
  }
}

}  // namespace

TwoQubitState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) schema_error("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() != 4) {
    throw Error(ErrorCode::kBadDim, "state JSON: \"dim\" must be 4");
  }
  if (!j.contains("re")) schema_error("missing \"re\"");
  std::vector<Complex> entries(16);
  read_part(j["re"], entries, false);
  if (j.contains("im")) read_part(j["im"], entries, true);
  return TwoQubitState::from_matrix(ComplexMatrix(4, std::move(entries)));
}

TwoQubitState state_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(e.what());
  }
  return state_from_json(j);
}

TwoQubitState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open state file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json_text(buf.str());
}

nlohmann::json state_to_json(const TwoQubitState& s) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (std::size_t c = 0; c < 4; ++c) {
      rr.push_back(s(r, c).real());
      ir.push_back(s(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", 4}, {"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace dephase
