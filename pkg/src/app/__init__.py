# Application module