# Hilbert Domain Package
