/* Minimal C client.
 *
 * Build:
 *   cargo build --release -p beltnot-ffi
 *   cc demo.c -I../include ../../../target/release/libbeltnot_ffi.a -lm -o demo
 */
#include <math.h>
#include <stdio.h>
#include "beltnot.h"

int main(void) {
    double k, p, q, r;
    if (bn_belt_constants(0.0, M_PI, &k, &p, &q, &r) != BnOk) return 1;
    printf("full sphere: K=%.3f P=%.3f Q=%.3f R=%.3f\n", k, p, q, r);

    BnOptimalReport report;
    if (bn_optimal_report(0.0, M_PI, 4, &report) != BnOk) return 1;
    printf("universal M=4: f_bar=%.15f (case %u, case formula optimal: %s)\n",
           report.f_bar, report.case_id, report.case_optimal ? "yes" : "no");

    BnGate *gate = NULL;
    if (bn_gate_realize_optimal(M_PI / 2, M_PI / 2, 1, &gate) != BnOk) return 1;
    double f;
    bn_gate_fidelity_sim(gate, M_PI / 2, 0.3, &f);
    printf("equatorial NOT at M=1: F=%.15f\n", f);
    bn_gate_free(gate);

    BnChain *chain = NULL;
    if (bn_chain_exemplar(7, 0.4, &chain) != BnOk) return 1;
    double overlap;
    uint8_t passed;
    bn_chain_verify_exemplar(chain, 7, 0.4, &overlap, &passed);
    printf("chain: %u sites, overlap=%.15f, %s\n",
           bn_chain_site_count(chain), overlap, passed ? "verified" : "FAILED");
    bn_chain_free(chain);
    return passed ? 0 : 1;
}
