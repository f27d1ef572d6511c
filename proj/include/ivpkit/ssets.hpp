#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivpkit/strips.hpp"

namespace ivpkit {

/// A_i x A_{i-1} with an enlargement radius. dom is A_i (the x-axis of G(f_i)),
/// cod is A_{i-1} (its y-axis).
struct Frame {
  Interval dom;
  Interval cod;
  Rat eps;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Both intervals inside [0,1], neither equal to [0,1], eps > 0.
bool frame_valid(const Frame& f);

enum class Label : std::uint8_t { L, R, B, T, BL, BR, TL, TR };

inline constexpr Label kAllLabels[] = {Label::L, Label::R, Label::B, Label::T,
                                       Label::BL, Label::BR, Label::TL, Label::TR};

std::string to_string(Label l);
std::optional<Label> parse_label(const std::string& s);

class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<Label> ls) {
    for (Label l : ls) insert(l);
  }
  void insert(Label l) { bits_ |= bit(l); }
  bool has(Label l) const { return (bits_ & bit(l)) != 0; }
  bool empty() const { return bits_ == 0; }
  LabelSet operator&(LabelSet o) const { return from_bits(bits_ & o.bits_); }
  std::vector<Label> labels() const;
  friend bool operator==(LabelSet, LabelSet) = default;

 private:
  static std::uint8_t bit(Label l) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(l)); }
  static LabelSet from_bits(std::uint8_t b) {
    LabelSet s;
    s.bits_ = b;
    return s;
  }
  std::uint8_t bits_ = 0;
};

/// Labels the frame may carry: the four corner unions always; L and R only when
/// dom avoids 0 and 1; B and T only when cod avoids 0 and 1.
LabelSet admissible_labels(const Frame& f);

/// A piece of a graph segment inside the open box Z(eps). An open end lies on the
/// box boundary and is not part of the piece.
struct Piece {
  std::size_t seg_id = 0;
  Seg seg;
  bool p_open = false;
  bool q_open = false;

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct SSetCertificate {
  Frame frame;
  LabelSet labels;
  std::vector<Piece> component_cprime;  // component of G ∩ Z(eps)
  std::vector<Seg> component_c;         // component of C' ∩ Z
};

/// Region descriptors as explicit unions of axis-aligned boxes with per-side
/// openness. This is the second, independent encoding of the region table; the
/// classifier uses direct predicates instead.
struct Box {
  Span x;
  Span y;
  bool contains(const Pt& p) const;
};

struct Region {
  std::vector<Box> boxes;
  bool contains(const Pt& p) const;
};

struct SSetRegions {
  Span j_dom, k_dom, j_cod, k_cod;  // [0,a_i), (b_i,1], [0,a_{i-1}), (b_{i-1},1]
  Box z;
  Region t, b, l, r, tl, tr, bl, br;

  explicit SSetRegions(const Frame& f);
  const Region& region(Label l) const;
};

/// Every framed S-set of the graph: for each component C' of G ∩ Z(eps) that meets
/// Z and lies in at least one admissible region, one certificate per component C of
/// C' ∩ Z, listing every region containing C'.
std::vector<SSetCertificate> classify_sset(const PLGraph& g, const Frame& f);
/// Same on a prepared arrangement, testing only labels in mask.
std::vector<SSetCertificate> classify_sset(const Arrangement& arr, const Frame& f, LabelSet mask);

/// Rebuilds the certificate from the graph and the frame alone (box-union regions,
/// closed clipping) and checks every claim in it.
bool recheck_sset(const PLGraph& g, const SSetCertificate& cert);

/// Inserts 2^depth - 1 equally spaced points into every gap of the sorted list.
std::vector<Rat> refine_dyadic(const std::vector<Rat>& coords, int depth);

struct LrSearchOptions {
  int depth = 3;
  std::vector<Rat> eps_schedule{Rat(1, 16), Rat(1, 32), Rat(1, 64)};
};

/// L- and R-sets over frames whose endpoints lie on the refined critical grids.
/// Sound, and complete only relative to that frame family.
std::vector<SSetCertificate> find_lr_sets(const PLGraph& g, const LrSearchOptions& opts = {});

}  // namespace ivpkit
