#ifndef HYPERLABEL_DCN_HPP
#define HYPERLABEL_DCN_HPP

// Label sets cut out by central hyperplanes.
//
// A hyperplane through the origin with normal w puts an orthant l entirely
// on its closed positive side iff l_i = sign(w_i) wherever w_i != 0.  The
// labels on one side, with one collective choice for the orthants the plane
// cuts, are therefore subcube(sigma) (cut orthants excluded) or the
// complement of subcube(sigma) (cut orthants included), sigma = sign(w).
// These are the only admissible face label sets; magnitudes of w never
// matter, so normals are carried as sign patterns.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlabel/geometry.hpp"

namespace hyperlabel {

/// Sign pattern in {-1,0,+1}^d with nonempty support.
class PartialSign {
 public:
  explicit PartialSign(std::vector<int> signs);
  int dim() const { return static_cast<int>(signs_.size()); }
  int operator[](int axis) const { return signs_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& signs() const { return signs_; }
  int support() const;
  /// "(+,+,0)"
  std::string str() const;
  friend bool operator==(const PartialSign&, const PartialSign&) = default;

 private:
  std::vector<int> signs_;
};

/// Subset of the 2^d orthant labels, stored as a bitmap over label bits.
class LabelSet {
 public:
  explicit LabelSet(int dim);
  LabelSet(int dim, std::span<const OrthantLabel> labels);

  static LabelSet full(int dim);
  /// Comma-separated sign strings, e.g. "+++,++-,-+-".
  static LabelSet parse(std::string_view text, int dim);

  int dim() const { return dim_; }
  std::size_t universe() const { return member_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(std::uint32_t bits) const { return member_[bits]; }
  bool contains(const OrthantLabel& l) const { return member_[l.bits()]; }
  void insert(std::uint32_t bits) { member_[bits] = true; }
  void insert(const OrthantLabel& l) { member_[l.bits()] = true; }
  LabelSet complement() const;
  LabelSet united(const LabelSet& other) const;
  bool subset_of(const LabelSet& other) const;
  std::vector<OrthantLabel> labels() const;
  std::string str() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  int dim_;
  std::vector<bool> member_;
};

/// {l : l_i = sigma_i wherever sigma_i != 0}.
LabelSet subcube(const PartialSign& sigma);

struct DcnWitness {
  PartialSign sigma;
  bool cut_included = false;  // true: S = complement(subcube(-sigma))
};

/// Witness when S is a subcube(sigma) (cut orthants excluded) or the
/// complement of one (cut orthants included, sigma the side's normal).
std::optional<DcnWitness> dcn_witness(const LabelSet& s);
inline bool is_dcn(const LabelSet& s) { return dcn_witness(s).has_value(); }

enum class FaceMode { equality, subcube };
FaceMode parse_face_mode(std::string_view name);
std::string to_string(FaceMode mode);

/// equality: S is itself a hyperplane set.  subcube: S fits inside one
/// subcube, i.e. all labels share a sign on some coordinate.
bool face_safe(const LabelSet& s, FaceMode mode);

/// Minimum-cardinality set of labels whose addition makes S a hyperplane
/// set; empty when S already is one, none when S is the full set.  Ties go
/// to the addition with the lexicographically smallest sorted label bits.
std::optional<LabelSet> dcn_extension(const LabelSet& s);

/// True iff conv(v) and conv(w) are disjoint (d <= 3 in intended use).
bool is_affinely_separable(std::span<const Point> v, std::span<const Point> w);

/// Independent oracle: tries every integer normal in {-K..K}^d \ {0} and
/// classifies each orthant by the signs of w on its generating rays.
bool brute_force_is_dcn(const LabelSet& s, int k);

}  // namespace hyperlabel

#endif  // HYPERLABEL_DCN_HPP
