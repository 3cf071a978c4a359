import os

# Pin BLAS threading before numpy loads anywhere in the test session; the
# suite's matmuls are tall and skinny and multithreaded BLAS thrashes.
for var in (
    "OPENBLAS_NUM_THREADS",
    "OMP_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
):
    os.environ.setdefault(var, "1")
