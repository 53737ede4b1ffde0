#pragma once

#include <map>
#include <string>

#include "koszul/field.hpp"

namespace koszul {

/// A word in the generators: bytes are 0-based generator indices. The empty
/// word is the unit monomial.
using Word = std::string;

/// deg-lex: longer words are larger; equal lengths compare by index sequence.
/// Compatible with concatenation, which is what the rewriting needs.
bool deglex_less(const Word& a, const Word& b);

/// Element of the free algebra k<V>: word -> nonzero coefficient.
/// std::map keeps iteration deterministic.
using NcPoly = std::map<Word, FieldElement>;

void nc_add_term(const Field& f, NcPoly& p, const Word& w, const FieldElement& c);
void nc_add(const Field& f, NcPoly& p, const NcPoly& q);
void nc_add_scaled(const Field& f, NcPoly& p, const FieldElement& s, const NcPoly& q);
NcPoly nc_scale(const Field& f, const FieldElement& s, const NcPoly& p);
NcPoly nc_mul(const Field& f, const NcPoly& a, const NcPoly& b);
NcPoly nc_monomial(const Field& f, const Word& w, const FieldElement& c);
bool nc_is_zero(const NcPoly& p);
bool nc_equal(const Field& f, const NcPoly& a, const NcPoly& b);

}  // namespace koszul
