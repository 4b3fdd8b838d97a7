#ifndef XMODKIT_CLI_HPP
#define XMODKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace xmodkit::cli {

// Exit codes: 0 ok, 1 invalid or failed check (witness printed),
// 2 parse/usage error, 3 search budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace xmodkit::cli

#endif
