#pragma once

/// \file interp.hpp
/// \brief Experiments on the L^1 kernel with reciprocal tail coefficients.

#include <cmath>

#include "hcube/harness/experiments/common.hpp"
#include "hcube/interp.hpp"

namespace hcube::harness::experiments {

inline void add_interp(Registry& reg) {
  reg.add({
      .id = "kernel-l1-sweep",
      .module = "interp",
      .anchor = "there is s_k with shat(m) = 1/m for |m| >= k and ||s_k||_1 <= C0 / k; "
                "||S - L_k||_1 = <S, c'((k+1)x)> with S - L_k alternating in sign",
      .params = {integer_param("k_min", "2", 2, 4096, "smallest even k"),
                 integer_param("k_max", "128", 2, 4096, "largest even k"),
                 integer_param("k_step", "2", 2, 4096, "even step between k values"),
                 real_param("c0", "2", 0, 1e6, "the single constant C0"),
                 integer_param("band", "4", 1, 64, "tail coefficients checked on k <= |m| <= band k"),
                 integer_param("grid", "10000", 10, 10000000, "points for the sign check")},
      .claims = {"l1-bound", "uniform-constant", "tail-coefficients", "duality", "sign-alternation"},
      .body =
          [](const Config& cfg, Sink& sink) {
            const long k_min = cfg.integer("k_min"), k_max = cfg.integer("k_max"), step = cfg.integer("k_step");
            if (k_min % 2 || step % 2) throw ConfigError("k_min and k_step must be even");
            double worst = 0;
            for (long k = k_min; k <= k_max; k += step) {
              const interp::KernelS s(static_cast<int>(k));
              const auto p = Params().add("k", k);
              const double kl1 = static_cast<double>(k) * s.l1_norm();
              worst = std::max(worst, kl1);
              sink.at_most("l1-bound", p, kl1, cfg.real("c0"));

              const long hi = cfg.integer("band") * k;
              const auto coeffs = s.coefficients(-hi, hi);
              double err = 0;
              for (long m = -hi; m <= hi; ++m)
                if (std::abs(m) >= k) err = std::max(err, std::abs(coeffs[m + hi] - 1.0 / static_cast<double>(m)));
              sink.equal("tail-coefficients", p, err, 0, 1e-10);

              const auto dual = interp::duality_identity_check(static_cast<int>(k), static_cast<int>(cfg.integer("grid")));
              sink.equal("duality", p, dual.residual_l1, dual.pairing, 1e-8);
              sink.at_most("sign-alternation", p, dual.worst_sign_violation, 0.0, 1e-13);
            }
            sink.at_most("uniform-constant",
                         Params().add("k_min", k_min).add("k_max", k_max).add("k_step", step), worst, cfg.real("c0"));
          },
  });

  reg.add({
      .id = "kernel-integration",
      .module = "interp",
      .anchor = "convolution with s_k integrates z^m for m >= k: (s_k * zeta^{m+1})(e^{i theta}) = e^{i(m+1) theta}/(m+1)",
      .params = {integers_param("k", "2, 4, 8, 16, 32", 2, 4096, "even k"),
                 integers_param("multiple", "1, 2, 4", 1, 64, "m = multiple * k")},
      .claims = {"integration"},
      .body =
          [](const Config& cfg, Sink& sink) {
            for (int k : cfg.integers("k")) {
              if (k % 2) throw ConfigError("k: values must be even");
              for (int mult : cfg.integers("multiple"))
                sink.equal("integration", Params().add("k", k).add("m", k * mult),
                           interp::integration_via_kernel_check(k, k * mult), 0, 1e-8);
            }
          },
  });
}

}  // namespace hcube::harness::experiments
