#include "znwedge/fusion.hpp"

#include <string>

namespace znwedge {

int antiparticle(int N, int alpha) {
    if (alpha < 1 || alpha > N - 1)
        throw DomainError("antiparticle: type out of range 1.." +
                          std::to_string(N - 1));
    return N - alpha;
}

bool FusionTable::has(int alpha, int beta) const {
    return processes.count({alpha, beta}) != 0;
}

const FusionProcess& FusionTable::at(int alpha, int beta) const {
    auto it = processes.find({alpha, beta});
    if (it == processes.end())
        throw DomainError("fusion table: no process (" + std::to_string(alpha) +
                          "," + std::to_string(beta) + ")");
    return it->second;
}

FusionTable build_fusion_table(int N, const MassSpectrum& spectrum) {
    if (spectrum.N != N) throw DomainError("build_fusion_table: spectrum N mismatch");
    FusionTable table;
    table.N = N;
    for (int a = 1; a <= N - 1; ++a) {
        for (int b = 1; b <= N - 1; ++b) {
            if ((a + b) % N == 0) continue;
            FusionProcess proc;
            proc.alpha = a;
            proc.beta = b;
            proc.gamma = (a + b) % N;
            proc.angles = solve_fusion_angles(spectrum.mass(a), spectrum.mass(b),
                                              spectrum.mass(proc.gamma));
            table.processes[{a, b}] = proc;
        }
    }
    return table;
}

}  // namespace znwedge
