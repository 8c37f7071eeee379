#ifndef SACG_CLI_HPP
#define SACG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sacg {

// Exit codes: 0 success, 1 usage or data error, 2 no reasonable solution
// under the automatic policy, 3 verification failure.
int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace sacg

#endif
