/* Minimal C consumer: build the library first with
 *   cargo build -p libnet-ffi --release
 * then
 *   cc examples/demo.c -Iinclude -L../../target/release -llibnet_ffi -lm -o demo
 *   LD_LIBRARY_PATH=../../target/release ./demo
 */
#include <stdio.h>
#include <string.h>
#include "libnet_ffi.h"

int main(void) {
    double m = 0.0;
    if (libnet_lambertian_order(1.0471975511965976, &m) != LIBNET_STATUS_OK) {
        return 1;
    }
    printf("lambertian order at 60 deg: %.15g\n", m);

    double v = 0.0;
    if (libnet_hyp2f1(0.5, 1.0, 1.5, -1.0, 1e-13, &v) != LIBNET_STATUS_OK) {
        return 1;
    }
    printf("2F1(1/2,1;3/2;-1) = %.15g (pi/4 = 0.785398163397448)\n", v);

    const char *config =
        "dimension = 1\n"
        "h_m = 1\n"
        "theta_h = 60 deg\n"
        "theta_f = 45 deg\n"
        "lambda = 1.0\n"
        "z_m = 0\n"
        "omega = 0.5\n"
        "trials = 20000\n"
        "seed = 7\n";
    LibnetScenario *scenario = NULL;
    if (libnet_scenario_parse(config, &scenario) != LIBNET_STATUS_OK) {
        char msg[256];
        libnet_last_error_message(msg, sizeof msg);
        fprintf(stderr, "config error: %s\n", msg);
        return 1;
    }

    LibnetValidation report;
    memset(&report, 0, sizeof report);
    if (libnet_validate(scenario, -1, 0, &report) != LIBNET_STATUS_OK) {
        return 1;
    }
    printf("closed form %.12g  quadrature %.12g  mc %.12g +- %.3g\n",
           report.closed_form, report.quadrature,
           report.empirical.mean, report.empirical.std_error);
    printf("math %s, statistics %s\n",
           report.math_pass ? "PASS" : "FAIL",
           report.stat_pass ? "PASS" : "FAIL");

    libnet_scenario_free(scenario);
    return report.math_pass && report.stat_pass ? 0 : 2;
}
