#include "instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace specband {

using nlohmann::json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const json& at(const std::string& key) const {
    if (!node_.is_object()) fail(ErrorKind::Parse, path_ + ": expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) fail(ErrorKind::Parse, child(key) + ": missing field");
    return *it;
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key) const { return as_number(at(key), child(key)); }

  std::size_t size(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(ErrorKind::Parse, child(key) + ": expected a non-negative integer");
    return v.get<std::size_t>();
  }

  cplx complex(const std::string& key) const { return as_complex(at(key), child(key)); }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array()) fail(ErrorKind::Parse, child(key) + ": expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], indexed(key, i)));
    return out;
  }

  std::vector<cplx> complexes(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array()) fail(ErrorKind::Parse, child(key) + ": expected an array");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_complex(v[i], indexed(key, i)));
    return out;
  }

 private:
  std::string indexed(const std::string& key, std::size_t i) const { return child(key) + "[" + std::to_string(i) + "]"; }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(ErrorKind::Parse, path + ": expected a number");
    return v.get<double>();
  }

  static cplx as_complex(const json& v, const std::string& path) {
    if (!v.is_object()) fail(ErrorKind::Parse, path + ": expected an object {re, im}");
    for (const auto& [key, value] : v.items())
      if (key != "re" && key != "im") fail(ErrorKind::Parse, path + "." + key + ": unknown field");
    Reader r(v, path);
    return {r.number("re"), r.number("im")};
  }

  const json& node_;
  std::string path_;
};

void check_size(std::size_t declared, std::size_t actual, const std::string& path) {
  if (declared != actual)
    fail(ErrorKind::Parse, path + ": declared n=" + std::to_string(declared) + " does not match " +
                               std::to_string(actual) + " eigenvalues");
}

template <class F>
void with_payload_prefix(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidMatrix || e.kind() == ErrorKind::InvalidData)
      throw Error(e.kind(), std::string("payload.") + e.what());
    throw;
  }
}

void dump(const json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        dump(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
      std::string s(buf, res.ptr);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump(-1, ' ', false, json::error_handler_t::replace);
  }
}

}  // namespace

const char* to_string(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::MatrixGeneral: return "matrix-general";
    case InstanceKind::MatrixHat: return "matrix-hat";
    case InstanceKind::SpectralData: return "spectral-data";
  }
  return "unknown";
}

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto colon = what.find("parse error");
    fail(ErrorKind::Parse, line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                               (colon == std::string::npos ? what : what.substr(colon)));
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, "1:1: top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "kind" && key != "payload" && key != "tol") fail(ErrorKind::Parse, key + ": unknown field");

  Reader top(doc, "");
  const json& kind = top.at("kind");
  if (!kind.is_string()) fail(ErrorKind::Parse, "kind: expected a string");
  const std::string k = kind.get<std::string>();

  InstanceFile f;
  if (doc.contains("tol")) {
    f.tol = top.number("tol");
    if (!(*f.tol > 0.0) || !std::isfinite(*f.tol)) fail(ErrorKind::Parse, "tol: must be a positive number");
  }
  Reader p(top.at("payload"), "payload");

  if (k == "matrix-general") {
    f.kind = InstanceKind::MatrixGeneral;
    PeriodicMatrixGeneral m;
    m.n = p.size("n");
    m.c = p.numbers("c");
    m.b = p.complexes("b");
    m.a_n = p.complex("a_n");
    with_payload_prefix([&] { validate_general(m); });
    f.payload = std::move(m);
  } else if (k == "matrix-hat") {
    f.kind = InstanceKind::MatrixHat;
    PeriodicMatrixHat m;
    m.n = p.size("n");
    m.c_hat = p.numbers("c_hat");
    m.b_hat = p.numbers("b_hat");
    m.b_hat_n = p.complex("b_hat_n");
    m.a_hat_n = p.complex("a_hat_n");
    with_payload_prefix([&] { validate_hat(m); });
    f.payload = std::move(m);
  } else if (k == "spectral-data") {
    f.kind = InstanceKind::SpectralData;
    SpectralData d;
    const std::size_t n = p.size("n");
    d.lambda = p.complexes("lambda");
    d.mu = p.numbers("mu");
    d.beta = p.complex("beta");
    check_size(n, d.lambda.size(), "payload.n");
    with_payload_prefix([&] { validate_data(d); });
    f.payload = std::move(d);
  } else {
    fail(ErrorKind::Parse, "kind: unknown instance kind \"" + k + "\"");
  }
  return f;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ":" + e.what());
  }
}

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const PeriodicMatrixGeneral& m) {
  json b = json::array();
  for (const auto& v : m.b) b.push_back(complex_to_json(v));
  return json{{"n", m.n}, {"c", m.c}, {"b", b}, {"a_n", complex_to_json(m.a_n)}};
}

json to_json(const PeriodicMatrixHat& m) {
  return json{{"n", m.n},
              {"c_hat", m.c_hat},
              {"b_hat", m.b_hat},
              {"b_hat_n", complex_to_json(m.b_hat_n)},
              {"a_hat_n", complex_to_json(m.a_hat_n)}};
}

json to_json(const SpectralData& d) {
  json lambda = json::array();
  for (const auto& v : d.lambda) lambda.push_back(complex_to_json(v));
  return json{{"n", d.n()}, {"lambda", lambda}, {"mu", d.mu}, {"beta", complex_to_json(d.beta)}};
}

json to_json(const InstanceFile& f) {
  json out;
  out["kind"] = to_string(f.kind);
  std::visit([&](const auto& payload) { out["payload"] = to_json(payload); }, f.payload);
  if (f.tol) out["tol"] = *f.tol;
  return out;
}

std::string canonical_dump(const json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

std::string serialize_instance(const InstanceFile& f) { return canonical_dump(to_json(f)); }

InstanceFile make_instance(const PeriodicMatrixGeneral& m) { return {InstanceKind::MatrixGeneral, m, {}}; }
InstanceFile make_instance(const PeriodicMatrixHat& m) { return {InstanceKind::MatrixHat, m, {}}; }
InstanceFile make_instance(const SpectralData& d) { return {InstanceKind::SpectralData, d, {}}; }

}  // namespace specband
