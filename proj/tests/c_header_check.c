/* Compiles the public header as C and exercises a few calls. */
#include <stdio.h>

#include "bpi/bpi.h"

int main(void) {
  bpi_interferometer cfg;
  double v = 0.0;
  if (bpi_interferometer_init(0.45, 10e-15, 0.5e-6, &cfg) != BPI_OK) return 1;
  if (bpi_interferometer_visibility(&cfg, &v) != BPI_OK) return 1;
  if (v < 0.9801 || v > 0.9803) return 1;
  if (bpi_interferometer_visibility(NULL, &v) != BPI_ERR_NULL_POINTER) return 1;
  printf("visibility %.6f\n", v);
  return 0;
}
