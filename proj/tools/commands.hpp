#ifndef PDLIMITS_COMMANDS_HPP
#define PDLIMITS_COMMANDS_HPP

// Exit codes: 0 ok, 2 bad input, 3 failed assertion (converge --assert).
int run_cli(int argc, char** argv);

#endif
