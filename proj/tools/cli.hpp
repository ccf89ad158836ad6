#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdimer {

// Runs the command line tool. stdout output is canonical (byte-identical for
// identical inputs and seeds); timings go to `err`. Returns the process exit
// code: 0 ok, 1 invalid input, 2 theorem violation, 3 resource guard.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdimer
