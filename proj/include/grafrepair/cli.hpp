#pragma once

namespace gr {

// Runs one CLI invocation. Exit codes: 0 success, 1 domain verdict
// "false/invalid", 2 usage or parse errors.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace gr
