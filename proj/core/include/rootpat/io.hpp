#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rootpat/field.hpp"
#include "rootpat/patterns.hpp"
#include "rootpat/poly.hpp"

namespace rootpat {

/// Field for a prime power q with the default modulus.
FieldPtr field_of_order(std::uint32_t q);

/// Parses "q" (default modulus) or "p^k/c_k,...,c_0" (pinned modulus,
/// highest coefficient first). "p^k" alone also selects the default.
FieldPtr parse_field_spec(std::string_view spec);

/// Canonical spec string: "p" for prime fields, "p^k/c_k,...,c_0" otherwise.
std::string field_spec_string(const Field& field);

/// "aK" for generator^K, "0" for zero.
std::string element_string(const Field& field, Elem x);
/// Parses "aK" (K may be negative or exceed q-2) or "0".
Elem parse_element(const Field& field, std::string_view text);
/// Comma-separated elements of one axis; zero is rejected.
std::vector<Elem> parse_unit_list(const Field& field, std::string_view text);
/// Axes separated by ';', elements by ','; zero is rejected.
std::vector<std::vector<Elem>> parse_axis_lists(const Field& field, std::string_view text);

/// Polynomial interchange record (one JSON object):
///   {"field": <spec>, "n": <vars>, "terms": [[[e_1, ..., e_n], <dlog of coeff>], ...]}
/// The zero polynomial is written with "terms": "0-poly"; an empty array is
/// accepted on input as well.
std::string poly_to_record(const MultiPoly& p);
MultiPoly poly_from_record(std::string_view text);

/// {"kind": "gap-window"|"gap-shift", "q", "k": [...], "avoided": {"q","m","n"}, "verified"}
std::string gap_certificate_record(const GapCertificate& cert);
/// {"kind": "coset", "field", "axes": [{"gamma": dlog, "d", "valid_orders": [...]}], "verified"}
std::string coset_certificate_record(const Field& field, const CosetCertificate& cert, bool verified);

}  // namespace rootpat
