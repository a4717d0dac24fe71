// Runs the self-check suite as a test binary; exit 3 mirrors the CLI's
// `verify` subcommand so scripted callers can tell check failures from
// crashes.
#include "qperc/acceptance.hpp"

int main() { return qperc::all_passed(qperc::run_acceptance(true)) ? 0 : 3; }
