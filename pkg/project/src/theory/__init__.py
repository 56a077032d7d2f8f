# Theory Domain Package
