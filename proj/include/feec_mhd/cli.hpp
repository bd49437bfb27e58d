#pragma once

namespace feec_mhd {

/// Entry point of the feec-mhd command line tool. Returns 0 on success, 1 on
/// a solver or I/O failure and 2 on bad usage.
int cli_main(int argc, char** argv);

}  // namespace feec_mhd
