// Timing comparison of the serial reference kernels against the OpenMP
// versions: exhaustive preserver verification, square-root enumeration and
// the GL(d,p) census sweep. Results are checked for equality as a side
// effect.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "inca/kernels.hpp"
#include "inca/preserver.hpp"

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds(t0);
}

void row(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-34s %10.3fs %10.3fs %7.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) jobs = std::atoi(argv[++i]);
  }
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::printf("threads: %d\n", threads);
  std::printf("%-34s %11s %11s %8s\n", "kernel", "serial", "openmp", "speedup");

  // Verification sweep on a 4-chain over F_3 (d = 10, 3^10 elements).
  {
    auto poset = inca::make_poset({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}});
    inca::dense::Algebra algebra(*poset, 3);
    inca::BasisOrder order(poset);
    auto field = inca::Field::prime(3);
    auto problem = inca::PreserverProblem::make(
        poset, field, inca::IncidenceElement::basis(poset, field, 0, 0),
        inca::IncidenceElement::basis(poset, field, 0, 0));
    auto phi = inca::construct_preserver(problem);
    auto matrix = inca::dense::Matrix::from_linear_map(phi);
    auto eps = algebra.basis(algebra.diag_index[0]);
    inca::kernels::VerifyResult rs, rp;
    double ts = timed([&] { rs = inca::kernels::exhaustive_verify_serial(algebra, matrix, eps, eps); });
    double tp = timed(
        [&] { rp = inca::kernels::exhaustive_verify_parallel(algebra, matrix, eps, eps, jobs); });
    row("exhaustive-verify chain4 F_3", ts, tp,
        rs.holds == rp.holds && rs.pairs_checked == rp.pairs_checked);
  }

  // Square roots on a 4-chain over F_3.
  {
    auto poset = inca::make_poset({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}});
    inca::dense::Algebra algebra(*poset, 3);
    auto target = algebra.basis(algebra.diag_index[0]);
    std::vector<std::uint64_t> rs, rp;
    double ts = timed([&] { rs = inca::kernels::square_roots_serial(algebra, target); });
    double tp = timed([&] { rp = inca::kernels::square_roots_parallel(algebra, target, jobs); });
    row("square-roots chain4 F_3", ts, tp, rs == rp);
  }

  // Full GL(5,2) census on the V poset.
  {
    auto poset = inca::make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
    inca::dense::Algebra algebra(*poset, 2);
    inca::kernels::CensusResult rs, rp;
    double ts = timed([&] { rs = inca::kernels::census_serial(algebra, 0, 1); });
    double tp = timed([&] { rp = inca::kernels::census_parallel(algebra, 0, 1, jobs); });
    bool equal = rs.total == rp.total && rs.pruned == rp.pruned &&
                 rs.preservers.size() == rp.preservers.size() &&
                 rs.audit_sampled == rp.audit_sampled;
    row("census V-poset GL(5,2)", ts, tp, equal);
  }
  return 0;
}
