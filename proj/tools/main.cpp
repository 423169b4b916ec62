#include "srclda/cli.hpp"

int main(int argc, char** argv) {
  return srclda::run_cli({argv + 1, argv + argc});
}
