/* Minimal C consumer: build the hull for q = 2^(1/3)·e^(2πi/3) with digits
 * {0, 1} and print its extremal points and the convexity verdict.
 *
 * Build (from the workspace root):
 *   cargo build --release -p rephull-capi
 *   cc crates/rephull-capi/examples/hull_info.c \
 *      -Icrates/rephull-capi/include \
 *      target/release/librephull_capi.a -lm -o hull_info
 */
#include <math.h>
#include <stdio.h>

#include "rephull.h"

int main(void) {
    RephullBase *base = NULL;
    RephullAlphabet *alphabet = NULL;
    RephullPolygon *hull = NULL;
    const double digits[] = {0.0, 1.0};
    double xy[2 * 64];
    size_t len, i;
    RephullStatus status;

    status = rephull_base_new(3, pow(2.0, 1.0 / 3.0), &base);
    if (status != REPHULL_STATUS_OK) {
        fprintf(stderr, "base: %s\n", rephull_status_message(status));
        return 1;
    }
    rephull_alphabet_new(digits, 2, &alphabet);
    rephull_lambda_hull(base, alphabet, &hull);

    len = rephull_polygon_len(hull);
    rephull_polygon_vertices(hull, xy, 2 * len);
    printf("hull has %zu vertices (%zu extremal)\n", len,
           rephull_polygon_extremal_count(hull));
    for (i = 0; i < len; i++) {
        printf("  (%.12g, %.12g)\n", xy[2 * i], xy[2 * i + 1]);
    }

    RephullConvexityReport report;
    rephull_check_convex(base, alphabet, &report);
    printf("convex: %s (gap %.12g vs threshold %.12g)\n",
           report.is_convex ? "yes" : "no", report.max_gap, report.threshold);

    rephull_polygon_free(hull);
    rephull_alphabet_free(alphabet);
    rephull_base_free(base);
    return 0;
}
