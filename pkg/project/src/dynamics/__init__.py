# Dynamics Domain Package
