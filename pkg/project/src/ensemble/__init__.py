# Ensemble Domain Package
