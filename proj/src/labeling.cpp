#include "hyperlabel/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace hyperlabel {

std::vector<OrthantLabel> admissible_labels(std::span<const double> dz, double sign_tol) {
  const int d = static_cast<int>(dz.size());
  if (d < 1 || d > kMaxDim) throw InputError("admissible_labels: dimension out of range");
  std::vector<OrthantLabel> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << d); ++bits) {
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      const int s = sign_of(dz[static_cast<std::size_t>(i)], sign_tol);
      const int l = (bits & label_bit(i, d)) ? -1 : 1;
      ok = s * l >= 0;
    }
    if (ok) out.push_back(OrthantLabel::from_bits(bits, d));
  }
  return out;
}

VertexLabel choose_label(std::span<const double> z, const ConvexImage& img, const BoxDomain& dom,
                         const LabelConfig& cfg) {
  const Point rep = representative(img, cfg.policy);
  const auto d = z.size();
  Point dz(d);
  double inf_norm = 0;
  for (std::size_t i = 0; i < d; ++i) {
    dz[i] = rep[i] - z[i];
    inf_norm = std::max(inf_norm, std::abs(dz[i]));
  }
  const double res = residual(z, img);
  if (inf_norm <= cfg.fix_tol || res <= cfg.fix_tol)
    return FixedHit{Point(z.begin(), z.end()), res};

  const auto walls = carrier(z, dom, cfg.sign_tol);
  std::vector<int> signs(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int s = sign_of(dz[i], cfg.sign_tol);
    if (walls[i] != 0) {
      if (s == walls[i])
        throw MapError("displacement points out of the domain at z = " + format_point(z) + " (axis " +
                       std::to_string(i + 1) + ")");
      signs[i] = -walls[i];
    } else {
      signs[i] = s == 0 ? 1 : s;
    }
  }
  return OrthantLabel(std::move(signs));
}

// ---------------------------------------------------------------------------
// GridLabeling

GridLabeling::GridLabeling(GridSpec grid, std::vector<std::int32_t> codes, std::vector<double> residuals)
    : grid_(std::move(grid)), codes_(std::move(codes)), residuals_(std::move(residuals)) {
  if (codes_.size() != grid_.vertex_count() || residuals_.size() != codes_.size())
    throw InputError("grid labeling size does not match the grid");
}

bool GridLabeling::complete() const {
  return std::none_of(codes_.begin(), codes_.end(), [](std::int32_t c) { return c == kUnlabeled; });
}

std::optional<OrthantLabel> GridLabeling::label(std::size_t flat) const {
  if (codes_[flat] < 0) return std::nullopt;
  return OrthantLabel::from_bits(static_cast<std::uint32_t>(codes_[flat]), dim());
}

std::vector<std::size_t> GridLabeling::fixed_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < codes_.size(); ++i)
    if (codes_[i] == kFixed) out.push_back(i);
  return out;
}

namespace {

void label_range(const GridSpec& g, const Correspondence& f, const LabelConfig& cfg, std::size_t begin,
                 std::size_t end, std::vector<std::int32_t>& codes, std::vector<double>& residuals) {
  for (std::size_t flat = begin; flat < end; ++flat) {
    const Point z = g.vertex(g.vertex_index(flat));
    const ConvexImage img = f.evaluate(z);
    const VertexLabel vl = choose_label(z, img, f.domain(), cfg);
    if (const auto* hit = std::get_if<FixedHit>(&vl)) {
      codes[flat] = GridLabeling::kFixed;
      residuals[flat] = hit->residual;
      if (cfg.early_exit) return;
    } else {
      codes[flat] = static_cast<std::int32_t>(std::get<OrthantLabel>(vl).bits());
      residuals[flat] = residual(z, img);
    }
  }
}

}  // namespace

GridLabeling label_grid(const GridSpec& g, const Correspondence& f, const LabelConfig& cfg) {
  if (g.dim() != f.dim()) throw InputError("label_grid: grid and map dimensions differ");
  if (!f.domain().contains(g.domain().lo()) || !f.domain().contains(g.domain().hi()))
    throw InputError("label_grid: grid domain is not inside the map domain");

  const std::size_t n = g.vertex_count();
  std::vector<std::int32_t> codes(n, GridLabeling::kUnlabeled);
  std::vector<double> residuals(n, 0.0);

  const unsigned threads = cfg.early_exit ? 1u : std::max(1u, cfg.threads);
  if (threads == 1 || n < 1024) {
    label_range(g, f, cfg, 0, n, codes, residuals);
  } else {
    // Disjoint contiguous ranges; output is independent of the split.
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (n + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk, end = std::min(n, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
          try {
            label_range(g, f, cfg, begin, end, codes, residuals);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return GridLabeling(g, std::move(codes), std::move(residuals));
}

void write_grid_csv(std::ostream& out, const GridLabeling& gl) {
  const int d = gl.dim();
  for (int i = 1; i <= d; ++i) out << 'i' << i << ',';
  for (int i = 1; i <= d; ++i) out << 'x' << i << ',';
  for (int i = 1; i <= d; ++i) out << 's' << i << ',';
  out << "is_fixed,residual\n";
  char buf[32];
  const auto& g = gl.grid();
  for (std::size_t flat = 0; flat < g.vertex_count(); ++flat) {
    const Index idx = g.vertex_index(flat);
    const Point x = g.vertex(idx);
    for (int v : idx) out << v << ',';
    for (double c : x) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << buf << ',';
    }
    const auto code = gl.code(flat);
    for (int i = 0; i < d; ++i) {
      if (code >= 0) out << (((static_cast<std::uint32_t>(code) & label_bit(i, d)) != 0) ? -1 : 1);
      out << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", gl.residual(flat));
    out << (code == GridLabeling::kFixed ? 1 : 0) << ',' << buf << '\n';
  }
}

}  // namespace hyperlabel
