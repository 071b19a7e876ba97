#pragma once

namespace curvlab::harness {

/// Entry point of the `curvlab` executable. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace curvlab::harness
