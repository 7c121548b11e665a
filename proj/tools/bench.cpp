#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#include "credal/galois.hpp"
#include "credal/measure.hpp"
#include "credal/rational.hpp"
#include "credal/setsystem.hpp"

namespace {

using credal::EventSet;
using credal::Rational;

long long best_ms(int repeat, const std::function<void()>& body) {
    long long best = -1;
    for (int r = 0; r < repeat; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        const long long ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
                .count();
        if (best < 0 || ms < best) best = ms;
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs parallel timing of the per-event LP kernels"};
    int n = 6;
    int threads = 4;
    int repeat = 3;
    app.add_option("--n", n, "Ground set size")->check(CLI::Range(2, 10));
    app.add_option("--threads", threads, "Parallel worker count")
        ->check(CLI::Range(2, 256));
    app.add_option("--repeat", repeat, "Repetitions, best time kept")
        ->check(CLI::Range(1, 20));
    CLI11_PARSE(app, argc, argv);

    const credal::GroundSet g = credal::ground(n);

    // reference measure with mass proportional to 1..n
    std::vector<Rational> mass;
    for (int i = 1; i <= n; ++i) mass.push_back(credal::rat(i, n * (n + 1) / 2));
    const credal::ReferenceMeasure psi = credal::make_reference(g, mass);
    const credal::PiecewiseLinearConcave gamma = credal::make_distortion(
        {{credal::rat(0), credal::rat(0)},
         {credal::rat(1, 3), credal::rat(2, 3)},
         {credal::rat(1), credal::rat(1)}});
    const credal::CredalPolytope polytope = credal::distorted_credal(psi, gamma);

    credal::SetSystem serial_dual{g, {}}, parallel_dual{g, {}};
    const long long dual_serial = best_ms(
        repeat, [&] { serial_dual = credal::dual_credal(psi, polytope, 1); });
    const long long dual_parallel = best_ms(repeat, [&] {
        parallel_dual = credal::dual_credal(psi, polytope, threads);
    });

    // two-block pre-Dynkin domain {empty, 1, rest, Omega} with mu(1) = 1/3
    const EventSet one = 1u;
    const EventSet rest = credal::complement(g, one);
    credal::PartialProbability mu{
        credal::make_system(g, {0, one, rest, credal::full_event(g)}),
        {{0, credal::rat(0)},
         {one, credal::rat(1, 3)},
         {rest, credal::rat(2, 3)},
         {credal::full_event(g), credal::rat(1)}}};
    credal::ImpreciseProbability serial_table{g, {}, {}}, parallel_table{g, {}, {}};
    const long long table_serial = best_ms(
        repeat, [&] { serial_table = credal::coherent_extension_table(mu, 1); });
    const long long table_parallel = best_ms(repeat, [&] {
        parallel_table = credal::coherent_extension_table(mu, threads);
    });

    const bool dual_same = serial_dual == parallel_dual;
    const bool table_same = serial_table.lower == parallel_table.lower &&
                            serial_table.upper == parallel_table.upper;

    std::cout << "dual-credal of distorted polytope, n=" << n << " ("
              << (std::size_t(1) << n) << " events)\n"
              << "  serial   " << dual_serial << " ms\n"
              << "  parallel " << dual_parallel << " ms (threads=" << threads
              << ")\n"
              << "  identical outputs: " << (dual_same ? "yes" : "NO") << "\n";
    std::cout << "coherent-extension-table, n=" << n << "\n"
              << "  serial   " << table_serial << " ms\n"
              << "  parallel " << table_parallel << " ms (threads=" << threads
              << ")\n"
              << "  identical outputs: " << (table_same ? "yes" : "NO") << "\n";
    return dual_same && table_same ? 0 : 1;
}
