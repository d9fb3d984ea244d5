#include "vinemeta/kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <list>
#include <memory>
#include <string>

#include "exp_sum.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/normal.hpp"
#include "vinemeta/quadrature.hpp"

namespace vinemeta {

void set_thread_count(int threads) {
  if (threads > 0) {
    omp_set_num_threads(threads);
  } else {
    omp_set_num_threads(omp_get_num_procs());
  }
}

namespace {

using Key = std::vector<double>;

/// Small least-recently-used cache. Gradient and Hessian evaluations move one
/// parameter at a time and come back to the base point, so a handful of
/// entries per array kind keeps nearly every unchanged array.
template <class V>
class Lru {
 public:
  explicit Lru(std::size_t capacity) : capacity_(capacity) {}

  std::shared_ptr<const V> find(const Key& key) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (it->first == key) {
        entries_.splice(entries_.begin(), entries_, it);
        return entries_.front().second;
      }
    }
    return nullptr;
  }

  void insert(Key key, std::shared_ptr<const V> value) {
    entries_.emplace_front(std::move(key), std::move(value));
    if (entries_.size() > capacity_) entries_.pop_back();
  }

 private:
  std::size_t capacity_;
  std::list<std::pair<Key, std::shared_ptr<const V>>> entries_;
};

/// Array with an identity used to key arrays derived from it.
struct Tagged {
  std::uint64_t id = 0;
  std::vector<double> x;
};

struct ArmLogProbs {
  std::vector<double> neg, pos, ne;
};

Key copula_key(const CopulaSpec& c) {
  return {static_cast<double>(c.family.kind), static_cast<double>(c.family.rotation), c.theta};
}

/// Node on the working scale of the margins: z = Phi^{-1}(v) for normal
/// margins, t = logit(v) for beta margins. Clamping keeps both finite.
double working_scale(double v, MarginKind margin) {
  v = std::clamp(v, copula::kClamp, 1.0 - copula::kClamp);
  return margin == MarginKind::Normal ? norm_quantile(v) : std::log(v) - std::log1p(-v);
}

double sum_log_p_hat(const std::array<int, 3>& y) {
  const double n = y[0] + y[1] + y[2];
  double s = 0.0;
  for (int k : y) {
    if (k > 0) s += k * std::log(k / n);
  }
  return s;
}

/// Caches beta quantile tables by margin.
class TableCache {
 public:
  std::shared_ptr<const BetaQuantileTable> get(const BetaMargin& m) {
    Key key{m.pi, m.gamma};
    if (auto t = cache_.find(key)) return t;
    auto t = std::make_shared<const BetaQuantileTable>(m);
    cache_.insert(std::move(key), t);
    return t;
  }

 private:
  Lru<BetaQuantileTable> cache_{8};
};

}  // namespace

// ---------------------------------------------------------------------------

struct QuadLikelihood::Impl {
  struct StudyConsts {
    double y[6];       // y01, y11, y21 (diseased), y00, y10, y20 (non-diseased)
    double constant;   // log multinomial coefficients of both arms
    double shift;      // upper bound of the kernel: log pmf at p = y / n
  };

  struct Nodes {
    std::uint64_t id;
    std::vector<double> s[4];  // working-scale nodes: nq, nq^2, nq^3, nq^4
  };

  std::vector<StudyTable> studies;
  MarginKind margin;
  std::size_t nq, n2, n3, n4;
  std::vector<double> u, lw, lw123;
  std::vector<StudyConsts> consts;

  std::uint64_t next_id = 1;
  Lru<Nodes> nodes_cache{4};
  Lru<Tagged> margin_cache[4] = {Lru<Tagged>(4), Lru<Tagged>(4), Lru<Tagged>(4), Lru<Tagged>(4)};
  Lru<ArmLogProbs> diseased_cache{4};
  Lru<ArmLogProbs> non_diseased_cache{4};
  TableCache tables;

  Impl(std::vector<StudyTable> data, MarginKind m, std::size_t n)
      : studies(std::move(data)), margin(m), nq(n), n2(n * n), n3(n * n * n), n4(n * n * n * n) {
    if (nq < 2) throw DomainError("nq must be at least 2");
    if (studies.empty()) throw DomainError("no studies");
    const auto rule = gauss_legendre_unit(nq);
    u = rule.nodes;
    for (double w : rule.weights) lw.push_back(std::log(w));
    lw123.resize(n3);
    for (std::size_t i = 0; i < n3; ++i) lw123[i] = lw[i / n2] + lw[(i / nq) % nq] + lw[i % nq];
    for (const auto& s : studies) {
      validate(s);
      const auto d = arm_counts(s, Arm::Diseased);
      const auto nd = arm_counts(s, Arm::NonDiseased);
      StudyConsts c{};
      for (int k = 0; k < 3; ++k) {
        c.y[k] = d[k];
        c.y[3 + k] = nd[k];
      }
      c.constant = log_multinomial_coefficient(d) + log_multinomial_coefficient(nd);
      c.shift = sum_log_p_hat(d) + sum_log_p_hat(nd);
      consts.push_back(c);
    }
  }

  std::shared_ptr<const Nodes> nodes_for(const DVineSpec& vine) {
    Key key;
    for (const auto& c : dvine::pair_copulas(vine)) {
      const auto k = copula_key(c);
      key.insert(key.end(), k.begin(), k.end());
    }
    if (auto hit = nodes_cache.find(key)) return hit;

    const auto& [c12, c23, c34] = vine.level1;
    const auto& c13_2 = vine.level2[0];
    const auto& c24_3 = vine.level2[1];
    const auto& c14_23 = vine.level3;

    std::vector<double> v2(n2), t1(n2), v3(n3), t3(n3), t4(n3);
    for (std::size_t i = 0; i < n2; ++i) {
      const double v1 = u[i / nq];
      v2[i] = copula::hinv(c12, u[i % nq], v1);
      t1[i] = copula::hfunc_given_second(c12, v1, v2[i]);
    }
    for (std::size_t i = 0; i < n3; ++i) {
      const std::size_t i12 = i / nq;
      const double t2 = copula::hinv(c13_2, u[i % nq], t1[i12]);
      v3[i] = copula::hinv(c23, t2, v2[i12]);
      t3[i] = copula::hfunc_given_second(c23, v2[i12], v3[i]);
      t4[i] = copula::hfunc_given_second(c13_2, t1[i12], t2);
    }
    auto nodes = std::make_shared<Nodes>();
    nodes->id = next_id++;
    const std::size_t sizes[4] = {nq, n2, n3, n4};
    for (int d = 0; d < 4; ++d) nodes->s[d].resize(sizes[d]);
    const MarginKind m = margin;
    auto& s4 = nodes->s[3];
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < n4; ++k) {
      const std::size_t i = k % n3;
      const double t5 = copula::hinv(c14_23, u[k / n3], t4[i]);
      const double t6 = copula::hinv(c24_3, t5, t3[i]);
      s4[k] = working_scale(copula::hinv(c34, t6, v3[i]), m);
    }
    for (std::size_t i = 0; i < nq; ++i) nodes->s[0][i] = working_scale(u[i], m);
    for (std::size_t i = 0; i < n2; ++i) nodes->s[1][i] = working_scale(v2[i], m);
    for (std::size_t i = 0; i < n3; ++i) nodes->s[2][i] = working_scale(v3[i], m);
    nodes_cache.insert(std::move(key), nodes);
    return nodes;
  }

  // Margin j applied to the nodes of level j (x_j is a function of v_j).
  std::shared_ptr<const Tagged> margin_values(int j, const Nodes& nodes, double a, double b) {
    Key key{static_cast<double>(nodes.id), a, b};
    if (auto hit = margin_cache[j].find(key)) return hit;
    const auto& s = nodes.s[j];
    auto out = std::make_shared<Tagged>();
    out->id = next_id++;
    out->x.resize(s.size());
    auto& x = out->x;
    const std::size_t n = s.size();
    if (margin == MarginKind::Normal) {
      for (std::size_t i = 0; i < n; ++i) x[i] = a + b * s[i];
    } else {
      const auto table = tables.get(BetaMargin{a, b});
#pragma omp parallel for schedule(static) if (n > 4096)
      for (std::size_t i = 0; i < n; ++i) x[i] = table->logit_quantile_from_logit(s[i]);
    }
    margin_cache[j].insert(std::move(key), out);
    return out;
  }

  std::shared_ptr<const ArmLogProbs> arm_probs(Arm arm, const Tagged& main, const Tagged& ne) {
    auto& cache = arm == Arm::Diseased ? diseased_cache : non_diseased_cache;
    Key key{static_cast<double>(main.id), static_cast<double>(ne.id)};
    if (auto hit = cache.find(key)) return hit;
    // main lives one level below ne: x1 on nq points against x3 on nq^3, x2
    // on nq^2 against x4 on nq^4. Broadcast main to the size of ne.
    const std::size_t n = ne.x.size();
    std::vector<double> xm(n);
    if (arm == Arm::Diseased) {
      for (std::size_t i = 0; i < n; ++i) xm[i] = main.x[i / n2];
    } else {
      for (std::size_t k = 0; k < n; ++k) xm[k] = main.x[(k % n3) / nq];
    }
    auto out = std::make_shared<ArmLogProbs>();
    out->neg.resize(n);
    out->pos.resize(n);
    out->ne.resize(n);
    // The arm's "main" cell is TP for the diseased arm and TN otherwise; the
    // remainder is FN or FP respectively.
    double* l_main = arm == Arm::Diseased ? out->pos.data() : out->neg.data();
    double* l_rest = arm == Arm::Diseased ? out->neg.data() : out->pos.data();
    if (margin == MarginKind::Normal) {
      detail::logit_arm_log_probs(n, xm.data(), ne.x.data(), l_main, out->ne.data(), l_rest);
    } else {
      detail::beta_arm_log_probs(n, xm.data(), ne.x.data(), l_main, out->ne.data(), l_rest);
    }
    cache.insert(std::move(key), out);
    return out;
  }

  std::vector<double> evaluate(const ModelParams& params) {
    const auto nodes = nodes_for(params.vine);
    std::array<std::shared_ptr<const Tagged>, 4> x;
    if (margin == MarginKind::Normal) {
      const auto m = normal_margins(params);
      for (int j = 0; j < 4; ++j) x[j] = margin_values(j, *nodes, m[j].mu, m[j].sigma);
    } else {
      const auto m = beta_margins(params);
      for (int j = 0; j < 4; ++j) x[j] = margin_values(j, *nodes, m[j].pi, m[j].gamma);
    }
    const auto dis = arm_probs(Arm::Diseased, *x[0], *x[2]);
    const auto non = arm_probs(Arm::NonDiseased, *x[1], *x[3]);

    std::vector<double> out(studies.size());
#pragma omp parallel
    {
      std::vector<double> g(n3);
#pragma omp for schedule(static)
      for (std::size_t s = 0; s < studies.size(); ++s) {
        const auto& c = consts[s];
        for (std::size_t i = 0; i < n3; ++i) {
          g[i] = lw123[i] + c.y[0] * dis->neg[i] + c.y[1] * dis->pos[i] + c.y[2] * dis->ne[i];
        }
        double shift = c.shift;
        double sum = detail::weighted_exp_sum(nq, n3, lw.data(), g.data(), non->neg.data(), non->pos.data(),
                                              non->ne.data(), c.y[3], c.y[4], c.y[5], shift);
        if (!(sum > 1e-250)) {
          shift = detail::max_exponent(nq, n3, lw.data(), g.data(), non->neg.data(), non->pos.data(),
                                       non->ne.data(), c.y[3], c.y[4], c.y[5]);
          sum = detail::weighted_exp_sum(nq, n3, lw.data(), g.data(), non->neg.data(), non->pos.data(),
                                         non->ne.data(), c.y[3], c.y[4], c.y[5], shift);
        }
        out[s] = c.constant + shift + std::log(sum);
      }
    }
    for (std::size_t s = 0; s < out.size(); ++s) {
      if (!std::isfinite(out[s])) {
        throw NumericError("study " + std::to_string(s) + ": log pmf is not finite");
      }
    }
    return out;
  }
};

QuadLikelihood::QuadLikelihood(std::vector<StudyTable> studies, MarginKind margin, std::size_t nq)
    : impl_(std::make_unique<Impl>(std::move(studies), margin, nq)) {}
QuadLikelihood::~QuadLikelihood() = default;
QuadLikelihood::QuadLikelihood(QuadLikelihood&&) noexcept = default;
QuadLikelihood& QuadLikelihood::operator=(QuadLikelihood&&) noexcept = default;

double QuadLikelihood::loglik(const ModelParams& params) {
  if (!is_valid(params, impl_->margin)) return -std::numeric_limits<double>::infinity();
  const auto per_study = impl_->evaluate(params);
  double total = 0.0;
  for (double v : per_study) total += v;
  return total;
}

std::vector<double> QuadLikelihood::study_log_pmfs(const ModelParams& params) {
  validate(params, impl_->margin);
  return impl_->evaluate(params);
}

std::size_t QuadLikelihood::nq() const noexcept { return impl_->nq; }
MarginKind QuadLikelihood::margin() const noexcept { return impl_->margin; }
const std::vector<StudyTable>& QuadLikelihood::studies() const noexcept { return impl_->studies; }

// ---------------------------------------------------------------------------

struct BivariateLikelihood::Impl {
  struct Nodes {
    std::uint64_t id;
    std::vector<double> s1, s2;
  };

  std::vector<BinomialStudy> studies;
  std::vector<double> constants;
  MarginKind margin;
  Handling handling;
  std::size_t nq, n2;
  std::vector<double> u, lw;
  std::uint64_t next_id = 1;
  Lru<Nodes> nodes_cache{4};
  TableCache tables;

  Impl(const std::vector<StudyTable>& data, MarginKind m, Handling h, std::size_t n)
      : margin(m), handling(h), nq(n), n2(n * n) {
    if (nq < 2) throw DomainError("nq must be at least 2");
    if (data.empty()) throw DomainError("no studies");
    const auto rule = gauss_legendre_unit(nq);
    u = rule.nodes;
    for (double w : rule.weights) lw.push_back(std::log(w));
    for (const auto& s : data) {
      validate(s);
      const auto b = recode(s, handling);
      studies.push_back(b);
      const auto lchoose = [](int n, int k) {
        return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      };
      constants.push_back(lchoose(b.n1, b.tp) + lchoose(b.n0, b.tn));
    }
  }

  std::shared_ptr<const Nodes> nodes_for(const CopulaSpec& c) {
    Key key = copula_key(c);
    if (auto hit = nodes_cache.find(key)) return hit;
    auto nodes = std::make_shared<Nodes>();
    nodes->id = next_id++;
    nodes->s1.resize(nq);
    nodes->s2.resize(n2);
    for (std::size_t i = 0; i < nq; ++i) nodes->s1[i] = working_scale(u[i], margin);
    for (std::size_t i = 0; i < n2; ++i) {
      nodes->s2[i] = working_scale(copula::hinv(c, u[i % nq], u[i / nq]), margin);
    }
    nodes_cache.insert(std::move(key), nodes);
    return nodes;
  }

  // Logits of the arm probabilities at the nodes.
  std::vector<double> logits(const std::vector<double>& s, double pi, double disp) {
    std::vector<double> y(s.size());
    if (margin == MarginKind::Normal) {
      const double mu = std::log(pi) - std::log1p(-pi);
      for (std::size_t i = 0; i < s.size(); ++i) y[i] = mu + disp * s[i];
    } else {
      const auto table = tables.get(BetaMargin{pi, disp});
      for (std::size_t i = 0; i < s.size(); ++i) y[i] = table->logit_quantile_from_logit(s[i]);
    }
    return y;
  }

  std::vector<double> evaluate(const BivParams& p) {
    const auto nodes = nodes_for(p.copula);
    const auto y1 = logits(nodes->s1, p.pi[0], p.disp[0]);
    const auto y2 = logits(nodes->s2, p.pi[1], p.disp[1]);
    std::vector<double> lp1(nq), lq1(nq), lp2(n2), lq2(n2);
    detail::binomial_log_probs(nq, y1.data(), lp1.data(), lq1.data());
    detail::binomial_log_probs(n2, y2.data(), lp2.data(), lq2.data());

    std::vector<double> out(studies.size());
    std::vector<double> e(n2);
    for (std::size_t s = 0; s < studies.size(); ++s) {
      const auto& b = studies[s];
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n2; ++i) {
        const std::size_t q1 = i / nq;
        e[i] = lw[q1] + lw[i % nq] + b.tp * lp1[q1] + (b.n1 - b.tp) * lq1[q1] + b.tn * lp2[i] +
               (b.n0 - b.tn) * lq2[i];
        m = std::max(m, e[i]);
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < n2; ++i) sum += std::exp(e[i] - m);
      out[s] = constants[s] + m + std::log(sum);
      if (!std::isfinite(out[s])) throw NumericError("study " + std::to_string(s) + ": log pmf is not finite");
    }
    return out;
  }
};

BivariateLikelihood::BivariateLikelihood(std::vector<StudyTable> studies, MarginKind margin, Handling handling,
                                         std::size_t nq)
    : impl_(std::make_unique<Impl>(studies, margin, handling, nq)) {}
BivariateLikelihood::~BivariateLikelihood() = default;
BivariateLikelihood::BivariateLikelihood(BivariateLikelihood&&) noexcept = default;
BivariateLikelihood& BivariateLikelihood::operator=(BivariateLikelihood&&) noexcept = default;

double BivariateLikelihood::loglik(const BivParams& params) {
  if (!is_valid(params, impl_->margin)) return -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (double v : impl_->evaluate(params)) total += v;
  return total;
}

std::vector<double> BivariateLikelihood::study_log_pmfs(const BivParams& params) {
  validate(params, impl_->margin);
  return impl_->evaluate(params);
}

std::size_t BivariateLikelihood::nq() const noexcept { return impl_->nq; }
MarginKind BivariateLikelihood::margin() const noexcept { return impl_->margin; }
Handling BivariateLikelihood::handling() const noexcept { return impl_->handling; }

}  // namespace vinemeta
