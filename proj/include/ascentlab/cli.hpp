#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ascentlab {

// Exit codes shared by every subcommand:
//   0  success
//   1  a verification or agreement check reported a mismatch
//   2  input error (flags, pattern/sequence/rule-file/GF syntax)
//   3  unsupported method for the requested subset (or matrix of a
//      parameterized system)
//   4  enumeration budget exhausted
//   5  environment error (network, offline mode, malformed response, file IO)
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace ascentlab
