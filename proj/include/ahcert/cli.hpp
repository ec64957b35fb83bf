#pragma once

namespace ahcert {

// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error.
int cli_main(int argc, const char* const* argv);

}  // namespace ahcert
