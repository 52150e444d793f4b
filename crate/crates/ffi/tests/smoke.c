#include <stdio.h>
#include <string.h>

#include "sncx.h"

int main(void) {
    const char *strata =
        "{\"components\": [{\"label\": \"C1\"}, {\"label\": \"C2\"}],"
        " \"strata\": [{\"indices\": [0, 1], \"label\": \"Q1\"}, {\"indices\": [0, 1], \"label\": \"Q2\"},"
        " {\"indices\": [0, 1], \"label\": \"Q3\"}, {\"indices\": [0, 1], \"label\": \"Q4\"}]}";
    SncxComplex *c = NULL;
    if (sncx_dual_complex(strata, &c) != SNCX_STATUS_OK) {
        fprintf(stderr, "dual: %s\n", sncx_last_error());
        return 1;
    }
    size_t f[4];
    size_t len = 0;
    size_t b1 = 0;
    if (sncx_complex_f_vector(c, f, 4, &len) != SNCX_STATUS_OK || len != 2) {
        return 2;
    }
    if (sncx_complex_betti(c, false, 1, &b1) != SNCX_STATUS_OK) {
        return 3;
    }
    printf("f=(%zu,%zu) b1=%zu\n", f[0], f[1], b1);
    SncxComplex *bad = NULL;
    if (sncx_complex_from_json("[", &bad) != SNCX_STATUS_INVALID_INPUT || strlen(sncx_last_error()) == 0) {
        return 4;
    }
    sncx_complex_free(c);
    return 0;
}
