#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "fcss/error.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal CSS code toolkit"};
    app.require_subcommand(1);
    int status = 0;
    using namespace fcss::cli;
    register_gen(app, status);
    register_code(app, status);
    register_params(app, status);
    register_distance(app, status);
    register_homology(app, status);
    register_gate_check(app, status);
    register_merge(app, status);
    register_scan(app, status);
    register_table1(app, status);
    register_export(app, status);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    } catch (const fcss::BudgetExceeded& e) {
        std::cerr << "budget exceeded (" << e.budget() << " nodes): " << e.what() << '\n';
        return kExitBudget;
    } catch (const fcss::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return status;
}
