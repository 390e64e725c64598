#include "qed_decoherence/cli/app.hpp"

int main(int argc, char** argv) { return qed::cli::run(argc, argv); }
