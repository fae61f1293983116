#include <stdio.h>

#include "crossratio.h"

int main(void) {
    CrStructure *line = NULL;
    if (cr_structure_extended_line(&line) != CR_STATUS_OK) {
        fprintf(stderr, "%s\n", cr_last_error());
        return 2;
    }
    bool moebius = false;
    char *report = NULL;
    CrStatus status = cr_verify(line, 100, 1, 1e-9, &moebius, &report);
    printf("extended line: %s\n", moebius ? "Moebius" : "not Moebius");
    cr_string_free(report);
    cr_structure_free(line);

    int8_t eta[CR_ETA5_LEN];
    if (cr_eta5("15342", eta) != CR_STATUS_OK) {
        fprintf(stderr, "%s\n", cr_last_error());
        return 2;
    }
    int trace = 0;
    for (int i = 0; i < 15; i++) {
        trace += eta[i * 15 + i];
    }
    printf("trace of eta5(15342): %d\n", trace);
    return status == CR_STATUS_OK ? 0 : 1;
}
