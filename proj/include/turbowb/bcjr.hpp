#ifndef TURBOWB_BCJR_HPP
#define TURBOWB_BCJR_HPP

#include <Eigen/Core>
#include <cstdint>

#include "turbowb/trellis.hpp"

namespace turbowb {

// Exact log-MAP BCJR for one RSC constituent. Forward metrics start in the
// certain zero state; backward metrics are uniform at the final step
// (unterminated encoder). Returns the extrinsic LLRs
//   extrinsic = a-posteriori - sys_llr - apriori,
// clipped to +-llr_saturation; clip events are added to *clip_count.
//
// All state folds are exactly invariant under trellis relabeling (pairwise
// max* is symmetric; the per-bit log-sum-exp sorts its operands), which makes
// decoding of any codeword bit-identical to decoding the all-zero codeword
// under the sign-adjusted noise.
Eigen::ArrayXd bcjr_extrinsic(const Eigen::ArrayXd& sys_llr,
                              const Eigen::ArrayXd& par_llr,
                              const Eigen::ArrayXd& apriori,
                              const TrellisTables& trellis,
                              double llr_saturation = 1e3,
                              bool max_log = false,
                              std::uint64_t* clip_count = nullptr,
                              bool renormalize = true);

// Ground-truth extrinsic by exhaustive enumeration of all 2^k input blocks.
// Refuses k > 14. No saturation is applied.
Eigen::ArrayXd map_oracle_extrinsic(const Eigen::ArrayXd& sys_llr,
                                    const Eigen::ArrayXd& par_llr,
                                    const Eigen::ArrayXd& apriori,
                                    const TurboCodeConfig& config);

}  // namespace turbowb

#endif
