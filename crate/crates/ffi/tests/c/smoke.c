#include <math.h>
#include <stdio.h>

#include "invy.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            char msg[256];                                       \
            invy_last_error_message(msg, sizeof msg);            \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, msg); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    InvyParams p;
    CHECK(invy_params_default(4.0, 2, &p) == INVY_STATUS_OK);
    p.mu = 0.5;
    p.chi = 0.1;

    double times[11];
    for (int i = 0; i < 11; i++) times[i] = 0.3 * i;

    InvyTrajectory *traj = NULL;
    CHECK(invy_evolve(&p, times, 11, &traj) == INVY_STATUS_OK);
    CHECK(invy_trajectory_len(traj) == 11);

    double w[11], norm[11];
    CHECK(invy_inversion(traj, w, 11) == INVY_STATUS_OK);
    CHECK(fabs(w[0] - 1.0) < 1e-12);
    CHECK(invy_norm_history(traj, norm, 11) == INVY_STATUS_OK);
    for (int i = 0; i < 11; i++) CHECK(fabs(norm[i] - 1.0) < 1e-10);
    CHECK(invy_inversion(traj, w, 5) == INVY_STATUS_BUFFER_TOO_SMALL);

    double theta[64], prob[64];
    CHECK(invy_phase_distribution(traj, 10, 64, theta, prob) == INVY_STATUS_OK);
    CHECK(theta[63] == M_PI);
    invy_trajectory_free(traj);

    const double a[4] = {-10.0, 35.0, -50.0, 24.0};
    double roots[4];
    CHECK(invy_solve_quartic(a, roots) == INVY_STATUS_OK);
    for (int i = 0; i < 4; i++) CHECK(fabs(roots[i] - (i + 1)) < 1e-12);

    printf("ok %s\n", invy_version());
    return 0;
}
