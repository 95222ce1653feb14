#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "inverse.hpp"
#include "matrix.hpp"

namespace specband {

enum class InstanceKind { MatrixGeneral, MatrixHat, SpectralData };

const char* to_string(InstanceKind kind) noexcept;

struct InstanceFile {
  InstanceKind kind = InstanceKind::MatrixHat;
  std::variant<PeriodicMatrixGeneral, PeriodicMatrixHat, SpectralData> payload;
  std::optional<double> tol;
};

// Throws Parse (with line:col or a field path), InvalidMatrix or InvalidData.
InstanceFile parse_instance(std::string_view text);
InstanceFile read_instance_file(const std::string& path);

nlohmann::json complex_to_json(cplx z);
nlohmann::json to_json(const PeriodicMatrixGeneral& m);
nlohmann::json to_json(const PeriodicMatrixHat& m);
nlohmann::json to_json(const SpectralData& d);
nlohmann::json to_json(const InstanceFile& f);

// Sorted keys, two-space indent, doubles at 17 significant digits, trailing newline.
std::string canonical_dump(const nlohmann::json& j);
std::string serialize_instance(const InstanceFile& f);

InstanceFile make_instance(const PeriodicMatrixGeneral& m);
InstanceFile make_instance(const PeriodicMatrixHat& m);
InstanceFile make_instance(const SpectralData& d);

}  // namespace specband
