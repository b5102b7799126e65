#ifndef MQRNG_CLI_HPP
#define MQRNG_CLI_HPP

namespace mqrng {

/// Entry point for the `mqrng` tool (simulate, extract, assess, test,
/// correlate, bench, rates). Returns the process exit code: 0 when the
/// command and any quality verdict passed, 1 when a verdict failed, 2 on
/// usage, configuration or input errors.
int run_cli(int argc, const char* const* argv);

} // namespace mqrng

#endif
