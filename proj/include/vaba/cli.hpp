// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace vaba::cli {

// Entry point for the vaba-lab tool; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace vaba::cli
