#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"rank-k Boolean matrix factorisation toolkit"};
    app.require_subcommand(0);
    CLI11_PARSE(app, argc, argv);
    std::cout << "kbmf: no subcommand given\n";
    return 0;
}
