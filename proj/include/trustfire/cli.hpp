#pragma once

namespace trustfire::cli {

// Entry point of the trustfire command. Exit codes: 0 success, 1 usage,
// parse or validation error, 2 I/O error, 3 verification failure.
int main(int argc, char** argv);

}  // namespace trustfire::cli
