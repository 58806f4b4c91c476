#include "ergocert/error.hpp"
#include "ergocert/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace ergocert::sim {

namespace {

constexpr long kChunk = 32;

// Welford accumulators for every (grid point, species) cell plus the terminal window.
struct Moments {
  long n = 0;
  Matrix mean, m2;
  Vector tmean, tm2;

  Moments(Eigen::Index rows, Eigen::Index cols)
      : mean(Matrix::Zero(rows, cols)), m2(Matrix::Zero(rows, cols)), tmean(Vector::Zero(cols)),
        tm2(Vector::Zero(cols)) {}

  void add(const Matrix& x, const Vector& terminal) {
    ++n;
    const Matrix delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta.cwiseProduct(x - mean);
    const Vector td = terminal - tmean;
    tmean += td / static_cast<double>(n);
    tm2 += td.cwiseProduct(terminal - tmean);
  }

  // Chan et al. pairwise merge
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
    const Matrix delta = o.mean - mean;
    mean += delta * (nb / nt);
    m2 += o.m2 + delta.cwiseProduct(delta) * (na * nb / nt);
    const Vector td = o.tmean - tmean;
    tmean += td * (nb / nt);
    tm2 += o.tm2 + td.cwiseProduct(td) * (na * nb / nt);
    n += o.n;
  }
};

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ERGOCERT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<double> uniform_grid(double t_end, int points) {
  if (points < 2) throw PreconditionError("grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = t_end * i / (points - 1);
  g.back() = t_end;
  return g;
}

EnsembleStats ensemble_means(const model::ReactionNetwork& net, const State& x0, double t_end, long n,
                             const std::vector<double>& grid, std::uint64_t base_seed, const EnsembleOptions& opts) {
  if (n < 2) throw PreconditionError("ensemble needs at least two trajectories");
  if (grid.empty()) throw PreconditionError("ensemble grid is empty");
  const auto G = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index d = net.d();
  // terminal window: grid points in the last 20% of the horizon
  std::vector<Eigen::Index> window;
  for (Eigen::Index g = 0; g < G; ++g)
    if (grid[g] >= 0.8 * t_end) window.push_back(g);
  if (window.empty()) window.push_back(G - 1);

  const long chunks = (n + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks, Moments(G, d));
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    Matrix x(G, d);
    Vector terminal(d);
    for (long c; (c = next.fetch_add(1)) < chunks;) {
      try {
        for (long i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
          const auto states = ssa_on_grid(net, x0, t_end, grid, trajectory_seed(base_seed, i), opts.ssa);
          for (Eigen::Index g = 0; g < G; ++g)
            for (Eigen::Index s = 0; s < d; ++s) x(g, s) = static_cast<double>(states[g][s]);
          terminal.setZero();
          for (auto g : window) terminal += x.row(g).transpose();
          terminal /= static_cast<double>(window.size());
          partial[c].add(x, terminal);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };

  const int threads = static_cast<int>(std::min<long>(thread_count(opts.threads), chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  Moments total(G, d);
  for (const auto& p : partial) total.merge(p);  // fixed order: schedule independent

  EnsembleStats st;
  st.grid = grid;
  st.species = net.species;
  st.n = total.n;
  const double nn = static_cast<double>(total.n);
  st.mean = total.mean;
  st.variance = (total.m2 / (nn - 1.0)).cwiseMax(0.0);
  st.half_width = (1.96 * st.variance.cwiseSqrt()) / std::sqrt(nn);
  st.terminal_mean = total.tmean;
  st.terminal_half_width = 1.96 * (total.tm2 / (nn - 1.0)).cwiseMax(0.0).cwiseSqrt() / std::sqrt(nn);
  return st;
}

}  // namespace ergocert::sim
