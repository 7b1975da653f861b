// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aniso/fft.hpp"
#include "aniso/parallel.hpp"
#include "aniso/support.hpp"

namespace aniso {

// ===========================================================================
// Quadrature
// ===========================================================================

double feature_scale(const AtomIndex& a) {
    const int j = atom_scale(a);
    if (std::holds_alternative<CurveletIndex>(a)) return std::ldexp(1.0, j - 1) * curvelet_half_width(j);
    if (std::holds_alternative<ShearletIndex>(a)) return std::ldexp(1.0, j - 1) / half_power(j);
    return std::ldexp(1.0, j - 2);
}

namespace {

int samples_for(double extent, double phase_rate, double feature, const QuadratureSpec& q) {
    const double osc = extent * std::fabs(phase_rate) / (2.0 * kPi);
    const double need = std::max({double(q.min_samples), q.samples_per_oscillation * osc,
                                  q.samples_per_feature * extent / feature});
    if (need > q.max_samples) {
        std::ostringstream msg;
        msg << "quadrature under-resolved: need " << std::ceil(need) << " samples across extent " << extent
            << " (phase rate " << phase_rate << "), limit " << q.max_samples;
        throw QuadratureRefused(msg.str());
    }
    return static_cast<int>(std::ceil(need));
}

std::complex<double> box_integral(const AtomIndex& a, const AtomIndex& b, Vec2 d, const Box& box,
                                  double feature, const QuadratureSpec& q) {
    const int nx = samples_for(box.x.length(), d.x, feature, q);
    const int ny = samples_for(box.y.length(), d.y, feature, q);
    const double hx = box.x.length() / nx, hy = box.y.length() / ny;
    const WindowPair& w = default_windows();
    std::vector<std::complex<double>> ey(ny);
    for (int t = 1; t < ny; ++t) ey[t] = std::polar(1.0, d.y * (box.y.lo + t * hy));
    std::complex<double> total = 0.0;
    for (int s = 1; s < nx; ++s) {
        const double x = box.x.lo + s * hx;
        std::complex<double> row = 0.0;
        for (int t = 1; t < ny; ++t) {
            const Vec2 xi{x, box.y.lo + t * hy};
            const double wa = atom_window(a, xi, w);
            if (wa == 0.0) continue;
            const double wb = atom_window(b, xi, w);
            if (wb == 0.0) continue;
            row += wa * wb * ey[t];
        }
        total += row * std::polar(1.0, d.x * x);
    }
    return total * (hx * hy);
}

}  // namespace

std::complex<double> inner_product_at(const AtomIndex& a, Vec2 pa, const AtomIndex& b, Vec2 pb,
                                      const QuadratureSpec& quad) {
    const SupportRegion sa = support_box(a), sb = support_box(b);
    if (quad.skip_disjoint && !supports_intersect(sa, sb)) return {0.0, 0.0};
    const Vec2 d = pa - pb;
    const double feature = std::min(feature_scale(a), feature_scale(b));
    std::complex<double> total = 0.0;
    for (const Box& p : sa.lobe_boxes())
        for (const Box& r : sb.lobe_boxes()) {
            const Box c = intersect(p, r);
            if (c.empty() || c.x.length() == 0.0 || c.y.length() == 0.0) continue;
            total += box_integral(a, b, d, c, feature, quad);
        }
    return total * (atom_amplitude(a) * atom_amplitude(b));
}

std::complex<double> inner_product(const AtomIndex& a, const AtomIndex& b, const QuadratureSpec& quad) {
    return inner_product_at(a, atom_position(a), b, atom_position(b), quad);
}

// ===========================================================================
// Families and prefilters
// ===========================================================================

void validate(const TruncationSpec& t) {
    if (t.j_max < 0) throw std::invalid_argument("j_max must be >= 0");
    if (t.m_radius < 0) throw std::invalid_argument("m_radius must be >= 0");
    if (!(t.p > 0.0 && t.p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
}

std::vector<AtomIndex> shearlet_family(const TruncationSpec& t) {
    validate(t);
    std::vector<AtomIndex> out;
    const int r = t.m_radius;
    for (int j = 0; j <= t.j_max; ++j)
        for (int cone = 1; cone <= 2; ++cone)
            for (int k = -shear_limit(j); k <= shear_limit(j); ++k)
                for (int a = -r; a <= r; ++a)
                    for (int b = -r; b <= r; ++b) out.emplace_back(ShearletIndex{j, k, {a, b}, cone});
    return out;
}

std::vector<AtomIndex> curvelet_family(const TruncationSpec& t) {
    validate(t);
    std::vector<AtomIndex> out;
    const int r = t.m_radius;
    for (int j = 0; j <= t.j_max; ++j)
        for (int ell = 0; ell < curvelet_orientation_count(j); ++ell)
            for (int a = -r; a <= r; ++a)
                for (int b = -r; b <= r; ++b) out.emplace_back(CurveletIndex{j, ell, {a, b}});
    return out;
}

bool passes_prefilter(int j, int k, int cone, int jt, int ell) {
    if (std::abs(j - jt) > 2) return false;
    if (!shear_candidates(j, jt, ell, cone).contains(k)) return false;
    if (!l_set(j, jt, k, cone).contains(ell)) return false;
    return supports_intersect(support_box(ShearletIndex{j, k, {0, 0}, cone}), support_box(CurveletIndex{jt, ell, {0, 0}}));
}

std::vector<GramBlock> gram_blocks(int j_max_rows, int j_max_cols) {
    std::vector<GramBlock> out;
    for (int j = 0; j <= j_max_rows; ++j)
        for (int cone = 1; cone <= 2; ++cone)
            for (int k = -shear_limit(j); k <= shear_limit(j); ++k)
                for (int jt = std::max(0, j - 2); jt <= std::min(j_max_cols, j + 2); ++jt)
                    for (int ell = 0; ell < curvelet_orientation_count(jt); ++ell)
                        if (passes_prefilter(j, k, cone, jt, ell)) out.push_back({j, k, cone, jt, ell});
    return out;
}

// ===========================================================================
// Tabulated block evaluator
// ===========================================================================

namespace {

int fft_size_at_least(int n) {
    for (int m = std::max(n, 8);; ++m) {
        if (m % 2) continue;
        int r = m;
        for (int f : {2, 3, 5}) while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

}  // namespace

GramBlockEvaluator::GramBlockEvaluator(const GramBlock& block, int row_radius, int col_radius,
                                       const WindowPair& w)
    : block_(block), row_radius_(row_radius), col_radius_(col_radius), ell_table_(block.ell), mirror_(0) {
    using namespace gram_detail;
    const int j = block.j, jt = block.jt, k = block.k;
    if (block.cone == 2) {
        const int L = curvelet_orientation_count(jt);
        int e = L / 2 - block.ell;
        mirror_ = 1;
        if (e < 0) {
            e += L;
            mirror_ = 2;
        }
        ell_table_ = e;
    }
    // xi = M eta with eta = S_k^T A_{2^{-j}} xi.
    const Mat2 m_map = parabolic_scaling(std::ldexp(1.0, j)) * shear(-k).transpose();
    c_ = m_map.transpose() * rotation_ccw(curvelet_angle(jt, ell_table_)) *
         parabolic_scaling(std::ldexp(1.0, -jt));

    const double reach = col_radius * std::max(std::fabs(c_.a) + std::fabs(c_.b), std::fabs(c_.c) + std::fabs(c_.d));
    const double y_max = row_radius + reach + 1.0;
    const int o = kTableOversample;
    q_ = static_cast<int>(std::ceil(o * y_max)) + kTaps;
    const double guard = std::max(64.0, y_max);
    const int n = fft_size_at_least(static_cast<int>(std::ceil(o * (2.0 * y_max + guard))));
    const double period = double(n) / o;
    const double h = 2.0 * kPi / period;

    RealBuffer g(static_cast<std::size_t>(n) * n, 0.0);
    const int reach_eta = static_cast<int>(std::ceil(2.0 / h)) + 1;
    for (int i1 = -reach_eta; i1 <= reach_eta; ++i1) {
        for (int i2 = -reach_eta; i2 <= reach_eta; ++i2) {
            const Vec2 xi = m_map * Vec2{i1 * h, i2 * h};
            const double a = shearlet_window(w, j, k, 1, xi);
            if (a == 0.0) continue;
            const double b = curvelet_window(w, jt, ell_table_, xi);
            if (b == 0.0) continue;
            g[static_cast<std::size_t>((i1 + n) % n) * n + (i2 + n) % n] = a * b;
        }
    }
    ComplexBuffer spec;
    fft2_r2c(n, n, g, spec);
    const int half = n / 2 + 1;
    const int width = 2 * q_ + 1;
    table_.assign(static_cast<std::size_t>(width) * width, 0.0);
    for (int q1 = -q_; q1 <= q_; ++q1) {
        for (int q2 = -q_; q2 <= q_; ++q2) {
            const int s1 = q2 >= 0 ? q1 : -q1;
            const int s2 = std::abs(q2);
            const cplx v = spec[static_cast<std::size_t>((s1 + n) % n) * half + s2];
            table_[static_cast<std::size_t>(q1 + q_) * width + (q2 + q_)] = v.real();
        }
    }
    scale_ = std::pow(2.0, -0.75 * (j + jt)) * std::pow(2.0, 1.5 * j) * h * h;
}

IntPair GramBlockEvaluator::map_column(IntPair mt) const {
    if (mirror_ == 1) return {mt[0], -mt[1]};
    if (mirror_ == 2) return {-mt[0], mt[1]};
    return mt;
}

double GramBlockEvaluator::table_at(double y1, double y2) const {
    using namespace gram_detail;
    const int o = kTableOversample;
    const double u1 = o * y1, u2 = o * y2;
    const double f1 = std::floor(u1), f2 = std::floor(u2);
    const auto w1 = lagrange_weights(u1 - f1), w2 = lagrange_weights(u2 - f2);
    const int b1 = static_cast<int>(f1) - 2 + q_, b2 = static_cast<int>(f2) - 2 + q_;
    const int width = 2 * q_ + 1;
    if (b1 < 0 || b2 < 0 || b1 + kTaps > width || b2 + kTaps > width)
        throw std::out_of_range("position outside the tabulated block range");
    double acc = 0.0;
    for (int i = 0; i < kTaps; ++i) {
        double s = 0.0;
        for (int k = 0; k < kTaps; ++k) s += w2[k] * table_[static_cast<std::size_t>(b1 + i) * width + b2 + k];
        acc += w1[i] * s;
    }
    return acc;
}

double GramBlockEvaluator::entry(IntPair m, IntPair mt) const {
    const IntPair t = map_column(mt);
    const Vec2 c = c_ * Vec2{double(t[0]), double(t[1])};
    return scale_ * table_at(m[0] - c.x, m[1] - c.y);
}

// ===========================================================================
// Assembly and norms
// ===========================================================================

namespace {

struct FamilyLayout {
    int radius = 0;
    std::size_t box = 1;
    std::vector<std::size_t> row_base;  // indexed by flattened (j, cone, k)
    std::vector<int> row_offset;        // per j: start of that j in row_base
    std::vector<std::size_t> col_base;  // indexed by flattened (jt, ell)
    std::vector<int> col_offset;
    std::size_t rows = 0, cols = 0;

    explicit FamilyLayout(const TruncationSpec& t) : radius(t.m_radius) {
        box = static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1);
        for (int j = 0; j <= t.j_max; ++j) {
            row_offset.push_back(static_cast<int>(row_base.size()));
            for (int cone = 1; cone <= 2; ++cone)
                for (int k = -shear_limit(j); k <= shear_limit(j); ++k) {
                    row_base.push_back(rows);
                    rows += box;
                }
        }
        for (int j = 0; j <= t.j_max; ++j) {
            col_offset.push_back(static_cast<int>(col_base.size()));
            for (int ell = 0; ell < curvelet_orientation_count(j); ++ell) {
                col_base.push_back(cols);
                cols += box;
            }
        }
    }

    std::size_t row_start(int j, int k, int cone) const {
        const int kk = shear_limit(j);
        return row_base[row_offset[j] + (cone - 1) * (2 * kk + 1) + (k + kk)];
    }
    std::size_t col_start(int jt, int ell) const { return col_base[col_offset[jt] + ell]; }
};

// Blocks are evaluated in chunks; results of a chunk are merged in block order so the
// floating-point summation order is independent of the worker count.
constexpr std::size_t kChunk = 32;

}  // namespace

CrossGram assemble_cross_gram(const TruncationSpec& rows, const TruncationSpec& cols, double threshold,
                              int workers) {
    validate(rows);
    validate(cols);
    if (rows.m_radius != cols.m_radius)
        throw std::invalid_argument("row and column truncations must share m_radius");
    CrossGram out;
    out.rows = shearlet_family(rows);
    out.cols = curvelet_family(cols);
    out.threshold = threshold;
    const FamilyLayout lay_r(rows), lay_c(cols);
    const int r = rows.m_radius;
    const auto blocks = gram_blocks(rows.j_max, cols.j_max);
    for (std::size_t start = 0; start < blocks.size(); start += kChunk) {
        const std::size_t count = std::min(kChunk, blocks.size() - start);
        std::vector<std::vector<GramEntry>> parts(count);
        parallel_for(count, workers, [&](std::size_t i) {
            const GramBlock& b = blocks[start + i];
            const GramBlockEvaluator ev(b, r, r);
            const std::size_t r0 = lay_r.row_start(b.j, b.k, b.cone), c0 = lay_c.col_start(b.jt, b.ell);
            ev.for_each(threshold, [&](std::size_t ro, std::size_t co, double v) {
                const auto& sh = std::get<ShearletIndex>(out.rows[r0 + ro]);
                const auto& cu = std::get<CurveletIndex>(out.cols[c0 + co]);
                const Vec2 bv = b_vector(sh.j, sh.k, {double(sh.m[0]), double(sh.m[1])}, cu.j, cu.ell,
                                         {double(cu.m[0]), double(cu.m[1])});
                parts[i].push_back({r0 + ro, c0 + co, {v, 0.0}, norm(bv)});
            });
        });
        for (auto& p : parts) out.entries.insert(out.entries.end(), p.begin(), p.end());
    }
    return out;
}

namespace {

OpNorm norm_from_sums(const std::vector<double>& row, const std::vector<double>& col, double p) {
    OpNorm o;
    const double rs = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
    const double cs = col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
    o.row_sup = std::pow(rs, 1.0 / p);
    o.col_sup = std::pow(cs, 1.0 / p);
    o.value = std::max(o.row_sup, o.col_sup);
    return o;
}

}  // namespace

OpNorm op_p_norm_detail(const CrossGram& m, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
    std::vector<double> row(m.rows.size(), 0.0), col(m.cols.size(), 0.0);
    for (const GramEntry& e : m.entries) {
        const double v = std::pow(std::abs(e.value), p);
        row[e.row] += v;
        col[e.col] += v;
    }
    return norm_from_sums(row, col, p);
}

double op_p_norm(const CrossGram& m, double p) { return op_p_norm_detail(m, p).value; }

double op_p_norm(const std::vector<std::vector<double>>& dense, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
    std::vector<double> row(dense.size(), 0.0), col;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (col.size() < dense[i].size()) col.resize(dense[i].size(), 0.0);
        for (std::size_t j = 0; j < dense[i].size(); ++j) {
            const double v = std::pow(std::fabs(dense[i][j]), p);
            row[i] += v;
            col[j] += v;
        }
    }
    return norm_from_sums(row, col, p).value;
}

CrossGram transpose(const CrossGram& m) {
    CrossGram t;
    t.rows = m.cols;
    t.cols = m.rows;
    t.threshold = m.threshold;
    t.entries.reserve(m.entries.size());
    for (const GramEntry& e : m.entries) t.entries.push_back({e.col, e.row, e.value, e.b_norm});
    return t;
}

GramSums accumulate_gram_sums(const TruncationSpec& t, const std::vector<double>& p_list, double threshold,
                              int workers) {
    validate(t);
    for (double p : p_list)
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
    const FamilyLayout lay(t);
    const std::size_t np = p_list.size();
    GramSums s;
    s.p = p_list;
    s.row_sums.assign(np, std::vector<double>(lay.rows, 0.0));
    s.col_sums.assign(np, std::vector<double>(lay.cols, 0.0));
    const auto blocks = gram_blocks(t.j_max, t.j_max);
    s.blocks = blocks.size();
    const std::size_t box = lay.box;

    struct Partial {
        std::vector<double> row, col;  // [p][box]
        std::size_t stored = 0;
    };
    for (std::size_t start = 0; start < blocks.size(); start += kChunk) {
        const std::size_t count = std::min(kChunk, blocks.size() - start);
        std::vector<Partial> parts(count);
        parallel_for(count, workers, [&](std::size_t i) {
            Partial& part = parts[i];
            part.row.assign(np * box, 0.0);
            part.col.assign(np * box, 0.0);
            const GramBlockEvaluator ev(blocks[start + i], t.m_radius, t.m_radius);
            ev.for_each(threshold, [&](std::size_t ro, std::size_t co, double v) {
                const double a = std::fabs(v);
                const double la = std::log(a);
                ++part.stored;
                for (std::size_t q = 0; q < np; ++q) {
                    const double x = p_list[q] == 1.0 ? a : std::exp(p_list[q] * la);
                    part.row[q * box + ro] += x;
                    part.col[q * box + co] += x;
                }
            });
        });
        for (std::size_t i = 0; i < count; ++i) {
            const GramBlock& b = blocks[start + i];
            const std::size_t r0 = lay.row_start(b.j, b.k, b.cone), c0 = lay.col_start(b.jt, b.ell);
            for (std::size_t q = 0; q < np; ++q)
                for (std::size_t x = 0; x < box; ++x) {
                    s.row_sums[q][r0 + x] += parts[i].row[q * box + x];
                    s.col_sums[q][c0 + x] += parts[i].col[q * box + x];
                }
            s.stored += parts[i].stored;
        }
    }
    return s;
}

OpNorm op_p_norm_from_sums(const GramSums& s, std::size_t p_index) {
    return norm_from_sums(s.row_sums.at(p_index), s.col_sums.at(p_index), s.p.at(p_index));
}

double ConvergenceTable::saturation_ratio(double p) const {
    std::vector<double> v;
    for (const auto& r : rows)
        if (r.p == p) v.push_back(r.norm.value);
    if (v.size() < 2 || v.back() == 0.0) return 0.0;
    return (v.back() - v[v.size() - 2]) / v.back();
}

ConvergenceTable op_norm_convergence(const std::vector<double>& p_list,
                                     const std::vector<std::pair<int, int>>& sweep, double threshold,
                                     int workers) {
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (sweep[i].first < sweep[i - 1].first || sweep[i].second < sweep[i - 1].second)
            throw std::invalid_argument("truncation sweep must be nondecreasing");
    ConvergenceTable table;
    for (const auto& [j_max, radius] : sweep) {
        const GramSums s = accumulate_gram_sums({j_max, radius, 1.0}, p_list, threshold, workers);
        for (std::size_t q = 0; q < p_list.size(); ++q)
            table.rows.push_back({j_max, radius, p_list[q], op_p_norm_from_sums(s, q)});
    }
    return table;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& entries) {
    std::vector<double> x, y;
    for (const auto& [b, v] : entries) {
        if (v == 0.0) continue;
        x.push_back(std::log(bracket(b)));
        y.push_back(std::log(std::fabs(v)));
    }
    if (x.empty()) throw std::invalid_argument("no overlap in slice");
    if (x.size() < 2) throw std::invalid_argument("decay fit needs at least two nonzero entries");
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("decay fit needs distinct |b| values");
    DecayFit f;
    f.count = x.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    f.r2 = syy > 0.0 ? 1.0 - ss / syy : 1.0;
    return f;
}

}  // namespace aniso
