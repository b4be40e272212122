#include "rootpat/io.hpp"

#include <charconv>

#include <json.hpp>

#include "rootpat/error.hpp"

namespace rootpat {

using nlohmann::json;

namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw Error("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw Error("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

FieldPtr field_of_order(std::uint32_t q) {
  if (q < 2) throw Error("field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw Error(std::to_string(q) + " is not a prime power");
  return Field::make(p, k);
}

FieldPtr parse_field_spec(std::string_view spec) {
  spec = strip(spec);
  const std::size_t caret = spec.find('^');
  if (caret == std::string_view::npos) {
    const auto q = parse_uint(spec, "field size");
    if (q > kMaxFieldSize) throw Error("field size exceeds 2^20");
    return field_of_order(static_cast<std::uint32_t>(q));
  }
  const auto p = parse_uint(spec.substr(0, caret), "characteristic");
  std::string_view rest = spec.substr(caret + 1);
  const std::size_t slash = rest.find('/');
  const auto k = parse_uint(rest.substr(0, slash), "extension degree");
  if (p > kMaxFieldSize || k > 64) throw Error("field too large");
  if (slash == std::string_view::npos) return Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
  std::vector<std::uint32_t> modulus;
  for (auto part : split(rest.substr(slash + 1), ','))
    modulus.push_back(static_cast<std::uint32_t>(parse_uint(strip(part), "modulus coefficient")));
  return Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k), modulus);
}

std::string field_spec_string(const Field& field) {
  if (field.degree() == 1) return std::to_string(field.characteristic());
  std::string s = std::to_string(field.characteristic()) + "^" + std::to_string(field.degree()) + "/";
  for (std::size_t i = 0; i < field.modulus().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(field.modulus()[i]);
  }
  return s;
}

std::string element_string(const Field& field, Elem x) {
  if (x.is_zero()) return "0";
  return "a" + std::to_string(field.dlog(x));
}

Elem parse_element(const Field& field, std::string_view text) {
  text = strip(text);
  if (text == "0") return field.zero();
  if (text.size() < 2 || text.front() != 'a') throw Error("element must be written aK or 0, got '" + std::string(text) + "'");
  return field.exp(parse_int(text.substr(1), "element exponent"));
}

std::vector<Elem> parse_unit_list(const Field& field, std::string_view text) {
  std::vector<Elem> out;
  text = strip(text);
  if (text.empty()) return out;
  for (auto part : split(text, ',')) {
    const Elem x = parse_element(field, part);
    if (x.is_zero()) throw Error("0 is not allowed here; elements must lie in F_q^*");
    out.push_back(x);
  }
  return out;
}

std::vector<std::vector<Elem>> parse_axis_lists(const Field& field, std::string_view text) {
  std::vector<std::vector<Elem>> out;
  for (auto axis : split(text, ';')) out.push_back(parse_unit_list(field, axis));
  return out;
}

std::string poly_to_record(const MultiPoly& p) {
  const Field& f = *p.field();
  json record;
  record["field"] = field_spec_string(f);
  record["n"] = p.vars();
  if (p.is_zero()) {
    record["terms"] = "0-poly";
  } else {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back(json::array({m.exponents, f.dlog(c)}));
    record["terms"] = std::move(terms);
  }
  return record.dump();
}

MultiPoly poly_from_record(std::string_view text) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed polynomial record: ") + e.what());
  }
  try {
    const FieldPtr field = parse_field_spec(record.at("field").get<std::string>());
    const auto n = record.at("n").get<std::size_t>();
    MultiPoly p(field, n);
    const json& terms = record.at("terms");
    if (terms.is_string()) {
      if (terms.get<std::string>() != "0-poly") throw Error("unknown terms marker");
      return p;
    }
    for (const json& term : terms) {
      auto exps = term.at(0).get<std::vector<std::uint32_t>>();
      if (exps.size() != n) throw Error("term arity does not match n");
      const Monomial m(std::move(exps));
      if (p.terms().count(m)) throw Error("duplicate monomial in record");
      p.set(m, field->exp(term.at(1).get<std::int64_t>()));
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed polynomial record: ") + e.what());
  }
}

std::string gap_certificate_record(const GapCertificate& cert) {
  json record;
  record["kind"] = cert.mode == GapMode::Window ? "gap-window" : "gap-shift";
  record["q"] = cert.q;
  record["k"] = cert.shift.exponents;
  record["avoided"] = {{"q", cert.q}, {"m", cert.avoided_m}, {"n", cert.n}};
  record["verified"] = cert.verified;
  return record.dump();
}

std::string coset_certificate_record(const Field& field, const CosetCertificate& cert, bool verified) {
  json record;
  record["kind"] = "coset";
  record["field"] = field_spec_string(field);
  json axes = json::array();
  for (const auto& axis : cert.axes)
    axes.push_back({{"gamma", field.dlog(axis.witness.gamma)},
                    {"d", axis.witness.subgroup.order},
                    {"valid_orders", axis.valid_orders}});
  record["axes"] = std::move(axes);
  record["verified"] = verified;
  return record.dump();
}

}  // namespace rootpat
