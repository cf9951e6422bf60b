#include "cubiczeta.h"
#include <stdio.h>

int main(void) {
    CzField *k = NULL;
    CzCubic *x = NULL;
    CzWeil *p1 = NULL;
    uint64_t lines = 0;
    if (cz_field_new(2, 1, &k) != CZ_STATUS_OK) return 1;
    if (cz_cubic_fermat(k, 3, &x) != CZ_STATUS_OK) return 1;
    if (cz_count_lines(x, 1, &lines) != CZ_STATUS_OK) return 1;
    if (cz_threefold_p1(x, CZ_VIA_COUNT, &p1) != CZ_STATUS_OK) {
        fprintf(stderr, "%s\n", cz_last_error());
        return 1;
    }
    printf("%llu lines, deg P1 = %u\n", (unsigned long long)lines, cz_weil_degree(p1));
    cz_weil_free(p1);
    cz_cubic_free(x);
    cz_field_free(k);
    return 0;
}
