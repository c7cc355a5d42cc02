// Smallest possible use of the engine: one stimulus area projecting into one
// plastic area. An assembly forms within a few rounds, converges, and then
// sustains itself on its own recurrent synapses once the stimulus is gone.

#include <cstdio>

#include "ac/brain.hpp"

int main() {
  ac::BrainConfig cfg;  // n=10000, k=100, p=0.05, beta=0.1
  ac::Brain brain(cfg);

  brain.add_area("STIM", cfg.k, cfg.k, /*explicit_area=*/true);
  brain.add_area("A");
  brain.add_fiber("STIM", "A");
  brain.build();

  // areas and fibers wake up inhibited; open everything we use
  brain.disinhibit("STIM", 0);
  brain.disinhibit("A", 0);
  brain.disinhibit_fiber("STIM", "A", 0);
  brain.activate("STIM", 0);

  ac::ProjectReport rep = brain.project_rounds(cfg.rounds);
  for (const ac::AreaStability& st : rep.areas)
    std::printf("area %s: converged=%s after %u rounds (final overlap %u/%u)\n",
                st.area.c_str(), st.converged ? "yes" : "no",
                st.first_converged_round + 1, st.final_overlap, cfg.k);

  // silence the stimulus; the assembly must carry itself
  const std::vector<ac::NeuronId> before = brain.area("A").cap;
  brain.inhibit("STIM", 0);
  for (int i = 0; i < 5; ++i) brain.step();
  const std::uint32_t kept =
      ac::Brain::count_overlap(before, brain.area("A").cap);
  std::printf("self-sustained overlap after 5 stimulus-free rounds: %u/%u\n",
              kept, cfg.k);
  return kept >= (cfg.k * 3) / 4 ? 0 : 1;
}
