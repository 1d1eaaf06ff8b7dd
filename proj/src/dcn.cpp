#include "hyperlabel/dcn.hpp"

#include <algorithm>
#include <sstream>

#include "hyperlabel/hull.hpp"

namespace hyperlabel {

PartialSign::PartialSign(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty() || static_cast<int>(signs_.size()) > kMaxDim)
    throw InputError("partial sign dimension out of range");
  for (int s : signs_)
    if (s < -1 || s > 1) throw InputError("partial sign entries must be -1, 0 or +1");
  if (support() == 0) throw InputError("partial sign must have nonempty support");
}

int PartialSign::support() const {
  return static_cast<int>(std::count_if(signs_.begin(), signs_.end(), [](int s) { return s != 0; }));
}

std::string PartialSign::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (i) out += ',';
    out += signs_[i] > 0 ? "+" : signs_[i] < 0 ? "-" : "0";
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// LabelSet

LabelSet::LabelSet(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw InputError("label set dimension out of range");
  member_.assign(std::size_t{1} << dim, false);
}

LabelSet::LabelSet(int dim, std::span<const OrthantLabel> labels) : LabelSet(dim) {
  for (const auto& l : labels) {
    if (l.dim() != dim) throw InputError("label dimension does not match the set");
    insert(l);
  }
}

LabelSet LabelSet::full(int dim) {
  LabelSet s(dim);
  s.member_.assign(s.member_.size(), true);
  return s;
}

LabelSet LabelSet::parse(std::string_view text, int dim) {
  LabelSet s(dim);
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
    if (token.empty()) continue;
    const auto l = OrthantLabel::parse(token);
    if (l.dim() != dim)
      throw InputError("label '" + token + "' has dimension " + std::to_string(l.dim()) + ", expected " +
                       std::to_string(dim));
    s.insert(l);
  }
  return s;
}

std::size_t LabelSet::size() const {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true));
}

LabelSet LabelSet::complement() const {
  LabelSet out(dim_);
  for (std::size_t i = 0; i < member_.size(); ++i) out.member_[i] = !member_[i];
  return out;
}

LabelSet LabelSet::united(const LabelSet& other) const {
  LabelSet out = *this;
  for (std::size_t i = 0; i < member_.size(); ++i) out.member_[i] = member_[i] || other.member_[i];
  return out;
}

bool LabelSet::subset_of(const LabelSet& other) const {
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i] && !other.member_[i]) return false;
  return true;
}

std::vector<OrthantLabel> LabelSet::labels() const {
  std::vector<OrthantLabel> out;
  for (std::uint32_t b = 0; b < member_.size(); ++b)
    if (member_[b]) out.push_back(OrthantLabel::from_bits(b, dim_));
  return out;
}

std::string LabelSet::str() const {
  std::string out;
  for (const auto& l : labels()) {
    if (!out.empty()) out += ',';
    out += l.str();
  }
  return out;
}

// ---------------------------------------------------------------------------

LabelSet subcube(const PartialSign& sigma) {
  const int d = sigma.dim();
  LabelSet s(d);
  for (std::uint32_t b = 0; b < s.universe(); ++b) {
    bool in = true;
    for (int i = 0; i < d && in; ++i) {
      const int l = (b & label_bit(i, d)) ? -1 : 1;
      in = sigma[i] == 0 || sigma[i] == l;
    }
    if (in) s.insert(b);
  }
  return s;
}

namespace {

// Coordinates on which every member agrees, as a partial sign (all zero when
// none agree or the set is empty).
std::vector<int> common_signs(const LabelSet& s) {
  const int d = s.dim();
  std::uint32_t all_and = ~std::uint32_t{0}, all_or = 0;
  bool any = false;
  for (std::uint32_t b = 0; b < s.universe(); ++b)
    if (s.contains(b)) all_and &= b, all_or |= b, any = true;
  std::vector<int> sig(static_cast<std::size_t>(d), 0);
  if (!any) return sig;
  for (int i = 0; i < d; ++i) {
    const auto bit = label_bit(i, d);
    if (all_and & bit)
      sig[static_cast<std::size_t>(i)] = -1;
    else if (!(all_or & bit))
      sig[static_cast<std::size_t>(i)] = 1;
  }
  return sig;
}

// sigma with subcube(sigma) == s, if s is a proper subcube.
std::optional<PartialSign> as_subcube(const LabelSet& s) {
  const auto sig = common_signs(s);
  const auto fixed = std::count_if(sig.begin(), sig.end(), [](int v) { return v != 0; });
  if (fixed == 0) return std::nullopt;
  if (s.size() != (std::size_t{1} << (s.dim() - fixed))) return std::nullopt;
  return PartialSign(sig);
}

template <class F>
void for_each_partial_sign(int d, F&& f) {
  std::vector<int> sig(static_cast<std::size_t>(d), -1);
  while (true) {
    if (std::any_of(sig.begin(), sig.end(), [](int v) { return v != 0; })) f(PartialSign(sig));
    int i = d - 1;
    while (i >= 0 && sig[static_cast<std::size_t>(i)] == 1) sig[static_cast<std::size_t>(i--)] = -1;
    if (i < 0) return;
    ++sig[static_cast<std::size_t>(i)];
  }
}

PartialSign negated(const PartialSign& p) {
  auto s = p.signs();
  for (auto& v : s) v = -v;
  return PartialSign(std::move(s));
}

}  // namespace

std::optional<DcnWitness> dcn_witness(const LabelSet& s) {
  if (auto sigma = as_subcube(s)) return DcnWitness{*sigma, false};
  if (auto tau = as_subcube(s.complement())) return DcnWitness{negated(*tau), true};
  return std::nullopt;
}

FaceMode parse_face_mode(std::string_view name) {
  if (name == "equality") return FaceMode::equality;
  if (name == "subcube") return FaceMode::subcube;
  throw InputError("unknown face mode '" + std::string(name) + "'");
}

std::string to_string(FaceMode mode) { return mode == FaceMode::equality ? "equality" : "subcube"; }

bool face_safe(const LabelSet& s, FaceMode mode) {
  if (s.empty()) throw InputError("face_safe: empty label set");
  if (mode == FaceMode::equality) return is_dcn(s);
  const auto sig = common_signs(s);
  return std::any_of(sig.begin(), sig.end(), [](int v) { return v != 0; });
}

std::optional<LabelSet> dcn_extension(const LabelSet& s) {
  if (s.size() == s.universe()) return std::nullopt;
  if (is_dcn(s)) return LabelSet(s.dim());

  std::optional<LabelSet> best;
  std::size_t best_size = 0;
  std::vector<std::uint32_t> best_bits;
  auto consider = [&](const LabelSet& target) {
    if (target.size() == target.universe() || !s.subset_of(target)) return;
    LabelSet add(s.dim());
    std::vector<std::uint32_t> bits;
    for (std::uint32_t b = 0; b < target.universe(); ++b)
      if (target.contains(b) && !s.contains(b)) add.insert(b), bits.push_back(b);
    if (!best || bits.size() < best_size || (bits.size() == best_size && bits < best_bits)) {
      best = add;
      best_size = bits.size();
      best_bits = std::move(bits);
    }
  };
  for_each_partial_sign(s.dim(), [&](const PartialSign& sigma) {
    const LabelSet cube = subcube(sigma);
    consider(cube);
    consider(cube.complement());
  });
  return best;
}

bool is_affinely_separable(std::span<const Point> v, std::span<const Point> w) {
  if (v.empty() || w.empty()) return true;
  return separating_hyperplane(v, w).has_value();
}

bool brute_force_is_dcn(const LabelSet& s, int k) {
  if (k < 1) throw InputError("brute_force_is_dcn: K must be positive");
  const int d = s.dim();
  const std::size_t n = s.universe();
  std::vector<int> w(static_cast<std::size_t>(d), -k);
  while (true) {
    if (std::any_of(w.begin(), w.end(), [](int v) { return v != 0; })) {
      // The orthant of label l is generated by the rays l_i e_i; w.x takes
      // both signs on it iff the plane cuts it.
      LabelSet pos(d), neg(d), cut(d);
      for (std::uint32_t b = 0; b < n; ++b) {
        bool has_pos = false, has_neg = false;
        for (int i = 0; i < d; ++i) {
          const int l = (b & label_bit(i, d)) ? -1 : 1;
          const int v = w[static_cast<std::size_t>(i)] * l;
          has_pos = has_pos || v > 0;
          has_neg = has_neg || v < 0;
        }
        if (has_pos && has_neg)
          cut.insert(b);
        else if (has_pos)
          pos.insert(b);
        else
          neg.insert(b);
      }
      if (s == pos || s == neg || s == pos.united(cut) || s == neg.united(cut)) return true;
    }
    int i = d - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == k) w[static_cast<std::size_t>(i--)] = -k;
    if (i < 0) return false;
    ++w[static_cast<std::size_t>(i)];
  }
}

}  // namespace hyperlabel
