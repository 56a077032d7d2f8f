# Observables Domain Package
