#include "otarith_cli/document.hpp"

#include <algorithm>

#include "otarith/errors.hpp"

namespace otarith::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(ErrorCode::ParseError, path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad(path + "/" + key, "unknown key");
  }
}

Int read_int(const json& v, const std::string& path) {
  if (v.is_number_float()) bad(path, "floats are not accepted");
  if (v.is_number_unsigned()) return Int(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Int(std::to_string(v.get<std::int64_t>()));
  if (!v.is_string()) bad(path, "expected an integer (decimal string)");
  try {
    return parse_int(v.get<std::string>());
  } catch (const Error&) {
    bad(path, "not a decimal integer: \"" + v.get<std::string>() + "\"");
  }
}

Rational read_rational(const json& v, const std::string& path) {
  if (v.is_number_float()) bad(path, "floats are not accepted");
  if (!v.is_string()) return Rational(read_int(v, path));
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error&) {
    bad(path, "not a rational: \"" + v.get<std::string>() + "\"");
  }
}

std::uint64_t read_count(const json& v, const std::string& path, std::uint64_t lo, std::uint64_t hi) {
  Int x = read_int(v, path);
  if (x < lo || x > hi) bad(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x.get_ui();
}

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array");
  return v;
}

IntVector read_vector(const json& v, const std::string& path, std::size_t n) {
  array_at(v, path);
  if (v.size() != n)
    fail(ErrorCode::ShapeError, path + ": expected " + std::to_string(n) + " coordinates, got " + std::to_string(v.size()));
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_int(v[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<IntVector> read_vectors(const json& v, const std::string& path, std::size_t n) {
  array_at(v, path);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_vector(v[i], path + "/" + std::to_string(i), n));
  return out;
}

}  // namespace

InputDocument parse_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  return parse_document(doc);
}

InputDocument parse_document(const json& doc) {
  InputDocument out;
  out.source = doc;
  only_keys(doc, "", {"field", "units", "subgroup", "modulus", "options"});
  if (!doc.contains("field")) bad("/field", "missing");

  const json& field = doc["field"];
  only_keys(field, "/field", {"min_poly", "integral_basis"});
  if (!field.contains("min_poly")) bad("/field/min_poly", "missing");
  const json& mp = array_at(field["min_poly"], "/field/min_poly");
  IntVector coeffs;
  for (std::size_t i = 0; i < mp.size(); ++i) coeffs.push_back(read_int(mp[i], "/field/min_poly/" + std::to_string(i)));
  out.min_poly = ZPoly(coeffs);
  if (out.min_poly.degree() < 2) fail(ErrorCode::ShapeError, "/field/min_poly: degree must be at least 2");
  if (coeffs.back() == 0) fail(ErrorCode::ShapeError, "/field/min_poly: leading coefficient is zero");
  const std::size_t n = static_cast<std::size_t>(out.min_poly.degree());

  if (field.contains("integral_basis")) {
    const json& ib = array_at(field["integral_basis"], "/field/integral_basis");
    if (ib.size() != n) fail(ErrorCode::ShapeError, "/field/integral_basis: expected " + std::to_string(n) + " rows");
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string rp = "/field/integral_basis/" + std::to_string(i);
      const json& row = array_at(ib[i], rp);
      if (row.size() != n) fail(ErrorCode::ShapeError, rp + ": expected " + std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j) b(i, j) = read_rational(row[j], rp + "/" + std::to_string(j));
    }
    out.integral_basis = std::move(b);
  }

  if (doc.contains("units")) {
    const json& u = doc["units"];
    only_keys(u, "/units", {"totally_positive_fundamental", "provenance"});
    if (!u.contains("totally_positive_fundamental")) bad("/units/totally_positive_fundamental", "missing");
    out.units = read_vectors(u["totally_positive_fundamental"], "/units/totally_positive_fundamental", n);
    if (u.contains("provenance")) {
      if (!u["provenance"].is_string() || u["provenance"].get<std::string>() != "input")
        bad("/units/provenance", "supplied units must carry provenance \"input\"");
    }
  }

  if (doc.contains("subgroup")) {
    const json& s = doc["subgroup"];
    only_keys(s, "/subgroup", {"generators"});
    if (!s.contains("generators")) bad("/subgroup/generators", "missing");
    out.subgroup = read_vectors(s["generators"], "/subgroup/generators", n);
  }

  if (doc.contains("modulus")) {
    const json& m = doc["modulus"];
    only_keys(m, "/modulus", {"finite_generators", "from_subgroup", "real_places"});
    ModulusSpec spec;
    if (m.contains("from_subgroup")) {
      if (!m["from_subgroup"].is_boolean()) bad("/modulus/from_subgroup", "expected a boolean");
      spec.from_subgroup = m["from_subgroup"].get<bool>();
    }
    if (m.contains("finite_generators")) {
      if (spec.from_subgroup) bad("/modulus", "finite_generators and from_subgroup are exclusive");
      spec.finite_generators = read_vectors(m["finite_generators"], "/modulus/finite_generators", n);
      if (spec.finite_generators.empty()) fail(ErrorCode::ShapeError, "/modulus/finite_generators: empty");
    } else if (!spec.from_subgroup) {
      bad("/modulus", "needs finite_generators or from_subgroup");
    }
    if (m.contains("real_places")) {
      const json& rp = m["real_places"];
      if (rp.is_string()) {
        if (rp.get<std::string>() != "all") bad("/modulus/real_places", "expected \"all\" or a 0/1 array");
      } else {
        std::vector<int> marks;
        array_at(rp, "/modulus/real_places");
        for (std::size_t i = 0; i < rp.size(); ++i)
          marks.push_back(static_cast<int>(read_count(rp[i], "/modulus/real_places/" + std::to_string(i), 0, 1)));
        spec.real_places = std::move(marks);
      }
    }
    out.modulus = std::move(spec);
  }

  if (doc.contains("options")) {
    const json& o = doc["options"];
    only_keys(o, "/options", {"precision_bits", "enum_cap", "horizon"});
    if (o.contains("precision_bits"))
      out.options.precision_bits = static_cast<unsigned>(read_count(o["precision_bits"], "/options/precision_bits", 32, 1u << 16));
    if (o.contains("enum_cap")) out.options.enum_cap = read_count(o["enum_cap"], "/options/enum_cap", 1, 1ull << 31);
    if (o.contains("horizon")) out.options.horizon = read_count(o["horizon"], "/options/horizon", 4, 100000);
  }
  return out;
}

Options resolve_options(const InputDocument& doc, const OptionOverrides& flags, const char* env_enum_cap) {
  Options o;
  if (doc.options.precision_bits) o.precision_bits = *doc.options.precision_bits;
  if (doc.options.enum_cap) o.enum_cap = *doc.options.enum_cap;
  if (doc.options.horizon) o.horizon = *doc.options.horizon;
  if (env_enum_cap && *env_enum_cap) {
    Int cap;
    try {
      cap = parse_int(env_enum_cap);
    } catch (const Error&) {
      fail(ErrorCode::ParseError, std::string("OTARITH_ENUM_CAP: not an integer: ") + env_enum_cap);
    }
    if (cap < 1 || cap > Int(static_cast<unsigned long>(1ull << 31))) fail(ErrorCode::ParseError, "OTARITH_ENUM_CAP: out of range");
    o.enum_cap = cap.get_ui();
  }
  if (flags.precision_bits) o.precision_bits = *flags.precision_bits;
  if (flags.enum_cap) o.enum_cap = *flags.enum_cap;
  if (flags.horizon) o.horizon = *flags.horizon;
  if (o.horizon < 4) fail(ErrorCode::ShapeError, "horizon must be at least 4");
  if (o.precision_bits < 32) fail(ErrorCode::ShapeError, "precision must be at least 32 bits");
  return o;
}

}  // namespace otarith::cli
