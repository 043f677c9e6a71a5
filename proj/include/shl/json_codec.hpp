// JSON persistence for the core value types. Encoding is canonical
// (alphabetical keys, big integers as decimal strings) so equal values
// produce byte-identical documents; decoding validates the reconstructed
// value and rejects unknown fields, reporting problems as
//   codec: <json path>: <what>.
#ifndef SHL_JSON_CODEC_HPP
#define SHL_JSON_CODEC_HPP

#include <string>

#include "shl/algebra.hpp"
#include "shl/family.hpp"
#include "shl/homotopy.hpp"
#include "shl/mapspace.hpp"
#include "shl/simplicial_set.hpp"

namespace shl {

std::string encode_sset(const SimplicialSet& s);
SimplicialSet decode_sset(const std::string& text);

std::string encode_pair(const SimplicialPair& p);
SimplicialPair decode_pair(const std::string& text);

/// Families carry their pair and level; the null family encodes as `null`.
std::string encode_family(const PolyFamily<AlgElem>& f);
PolyFamily<AlgElem> decode_family(const std::string& text);

std::string encode_hom(const Hom<AlgElem>& h);
Hom<AlgElem> decode_hom(const std::string& text);

std::string encode_cert(const HomotopyCert<AlgElem>& c);
HomotopyCert<AlgElem> decode_cert(const std::string& text);

std::string encode_map_simplex(const MapSimplex& x);
MapSimplex decode_map_simplex(const std::string& text);

std::string encode_diagram(const StageDiagram& s);
StageDiagram decode_diagram(const std::string& text);

}  // namespace shl

#endif
