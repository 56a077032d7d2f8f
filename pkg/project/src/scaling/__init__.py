# Scaling Domain Package
