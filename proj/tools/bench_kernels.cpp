// Benchmark comparing the OpenMP kernels against the serial reference
// implementations: criterion margin sweeps, sphere sup-norm sampling and
// flow batches.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "ballchain/builtin.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/loewner.hpp"
#include "ballchain/parallel.hpp"

using namespace ballchain;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int scale = 1;
  for (int i = 1; i < argc; ++i)
    if (std::strncmp(argv[i], "--scale=", 8) == 0) scale = std::atoi(argv[i] + 8);
  if (scale < 1) scale = 1;

  std::printf("jobs: %d\n", effective_jobs());

  // margin sweep over a large ball sample
  {
    const PolyMap f = builtin::get_map("shear-0.5");
    const PolyCalculus calc(f);
    const CMatrix id = CMatrix::identity(2);
    const BallSample s =
        make_sample(2, default_radii(), 20000 * scale, 0, 7);
    std::vector<double> serial_out, parallel_out;
    const double ts = time_ms(
        [&] { serial_out = spirallike_margins(calc, id, s.points, Exec::serial); });
    const double tp = time_ms(
        [&] { parallel_out = spirallike_margins(calc, id, s.points, Exec::parallel); });
    if (serial_out != parallel_out) {
      std::printf("margin kernels disagree\n");
      return 1;
    }
    report("spirallike margin sweep", ts, tp);
  }

  // sup-norm sampling stage
  {
    const PolyMap f = builtin::get_map("two-term-ktilde");
    const auto parts = homogeneous_parts(f).parts;
    SupNormBudget budget;
    budget.samples = 200000 * scale;
    budget.restarts = 0;
    double vs = 0.0, vp = 0.0;
    const double tp = time_ms([&] { vp = sup_norm_on_sphere(parts[0], 1.0, budget).sampled; });
    set_jobs(1);
    const double ts = time_ms([&] { vs = sup_norm_on_sphere(parts[0], 1.0, budget).sampled; });
    set_jobs(0);
    if (vs != vp) {
      std::printf("sup-norm kernels disagree\n");
      return 1;
    }
    report("sup-norm sampling", ts, tp);
  }

  // flow batch
  {
    const HerglotzField field = builtin::get_field("spiral-shear-0.3");
    BallSample s = make_sample(2, {0.3, 0.6, 0.85}, 300 * scale, 0, 11);
    std::vector<FlowOutcome> serial_out, parallel_out;
    const double ts =
        time_ms([&] { serial_out = flow_batch(field, s.points, 0.0, 1.0, 1e-10, Exec::serial); });
    const double tp = time_ms(
        [&] { parallel_out = flow_batch(field, s.points, 0.0, 1.0, 1e-10, Exec::parallel); });
    for (std::size_t i = 0; i < serial_out.size(); ++i)
      if (serial_out[i].result->value != parallel_out[i].result->value) {
        std::printf("flow kernels disagree\n");
        return 1;
      }
    report("flow batch", ts, tp);
  }
  return 0;
}
