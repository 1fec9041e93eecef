#pragma once

#include "symquot/kernels/kernels.hpp"

namespace symquot::kernels::detail {

const KernelTable& scalar_kernels();
const KernelTable& avx2_kernels();

}  // namespace symquot::kernels::detail
