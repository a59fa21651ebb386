/* Minimal C client: certify the least eigenvalue of [[2,1],[1,2]] and verify it. */
#include <stdio.h>
#include <string.h>

#include "spectra_cert.h"

static int fail(const char *what, SpectraStatus status) {
    const char *msg = spectra_last_error();
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, msg ? msg : "");
    return 1;
}

int main(void) {
    SpectraMatrix *m = NULL;
    SpectraStatus s = spectra_matrix_parse("2 2\n2 1\n1 2\n", false, &m);
    if (s != SPECTRA_STATUS_OK) return fail("parse", s);

    SpectraInertia in;
    s = spectra_inertia(m, SPECTRA_PIVOT_MAX, &in);
    if (s != SPECTRA_STATUS_OK) return fail("inertia", s);
    printf("inertia %zu %zu %zu\n", in.n_plus, in.n_minus, in.n_zero);

    char *doc = NULL;
    s = spectra_certify(m, SPECTRA_KIND_MU, "1/1048576", SPECTRA_PIVOT_MAX, &doc);
    if (s != SPECTRA_STATUS_OK) return fail("certify", s);

    s = spectra_verify(doc, false, NULL);
    if (s != SPECTRA_STATUS_OK) return fail("verify", s);
    printf("verified %s", doc);

    /* flip one digit of the digest: must be rejected */
    char *digest = strstr(doc, "sha256:");
    digest[7] = digest[7] == '0' ? '1' : '0';
    s = spectra_verify(doc, false, NULL);
    printf("tampered %s\n", s == SPECTRA_STATUS_VERIFICATION_FAILED ? "rejected" : "accepted");

    spectra_string_free(doc);
    spectra_matrix_free(m);
    return s == SPECTRA_STATUS_VERIFICATION_FAILED ? 0 : 1;
}
