/*
 * spidev_test: sends a fixed test frame, prints what comes back and checks
 * the peripheral's device id. Options select the device, mode flags, speed
 * and the number of iterations.
 */

static const char *device = "/dev/spidev0.0";
static uint32_t mode = 0;
static uint8_t lsb_first = 0;
static uint8_t bits = 8;
static uint32_t speed = 500000;
static uint16_t delay = 0;
static int verbose = 0;
static int iterations = 1;

static uint8_t default_tx[] = {
    0x80, 0x00, 0xFF, 0xFF, 0xFF, 0xFF,
    0x40, 0x00, 0x00, 0x00, 0x00, 0x95,
};
static uint8_t default_rx[12] = {0, };

static void pabort(const char *s)
{
    perror(s);
    abort();
}

static void hex_dump(const uint8_t *src, int length, const char *prefix)
{
    int i;

    printf("%s |", prefix);
    for (i = 0; i < length; i++) {
        printf(" %02X", src[i]);
    }
    printf(" |\n");
}

static void transfer(int fd, const uint8_t *tx, uint8_t *rx, int len)
{
    int ret;
    struct spi_ioc_transfer tr = {
        .tx_buf = (unsigned long)tx,
        .rx_buf = (unsigned long)rx,
        .len = len,
        .delay_usecs = delay,
        .speed_hz = speed,
        .bits_per_word = bits,
    };

    ret = ioctl(fd, MSG, &tr);
    if (ret < 1)
        pabort("can't send spi message");

    if (verbose)
        hex_dump(tx, len, "TX");
    hex_dump(rx, len, "RX");
}

static int parse_opts(int argc, char *argv[])
{
    int c;

    while ((c = getopt(argc, argv, "D:s:d:b:i:lHOLC3v")) != -1) {
        if (c == 'D') {
            device = optarg;
        } else if (c == 's') {
            speed = atoi(optarg);
        } else if (c == 'd') {
            delay = atoi(optarg);
        } else if (c == 'b') {
            bits = atoi(optarg);
        } else if (c == 'i') {
            iterations = atoi(optarg);
        } else if (c == 'l') {
            mode = mode | 0x20;
        } else if (c == 'H') {
            mode = mode | 0x01;
        } else if (c == 'O') {
            mode = mode | 0x02;
        } else if (c == 'L') {
            lsb_first = 1;
        } else if (c == 'C') {
            mode = mode | 0x04;
        } else if (c == '3') {
            mode = mode | 0x10;
        } else if (c == 'v') {
            verbose = 1;
        } else {
            fprintf(stderr, "usage: %s [-DsdbilHOLC3v]\n", argv[0]);
            return -1;
        }
    }
    return 0;
}

static int check_device_id(const uint8_t *rx)
{
    if (rx[1] != 0xE5) {
        fprintf(stderr, "device id check failed: 0x%02X\n", rx[1]);
        return 0;
    }
    return 1;
}

int main(int argc, char *argv[])
{
    int ret = 0;
    int fd;
    int i;

    if (parse_opts(argc, argv) < 0)
        return 1;

    fd = open(device, O_RDWR);
    if (fd < 0)
        pabort("can't open device");

    if (ioctl(fd, WR_MODE32, &mode) == -1) pabort("can't set spi mode");
    if (ioctl(fd, RD_MODE32, &mode) == -1) pabort("can't get spi mode");
    if (ioctl(fd, WR_LSB_FIRST, &lsb_first) == -1) pabort("can't set bit order");
    if (ioctl(fd, RD_LSB_FIRST, &lsb_first) == -1) pabort("can't get bit order");
    if (ioctl(fd, WR_BITS_PER_WORD, &bits) == -1) pabort("can't set bits per word");
    if (ioctl(fd, RD_BITS_PER_WORD, &bits) == -1) pabort("can't get bits per word");
    if (ioctl(fd, WR_MAX_SPEED_HZ, &speed) == -1) pabort("can't set max speed hz");
    if (ioctl(fd, RD_MAX_SPEED_HZ, &speed) == -1) pabort("can't get max speed hz");

    printf("spi mode: 0x%x\n", mode);
    printf("bits per word: %d\n", bits);
    printf("max speed: %d Hz (%d KHz)\n", speed, speed / 1000);

    for (i = 0; i < iterations; i++) {
        transfer(fd, default_tx, default_rx, sizeof(default_tx));
        if (!check_device_id(default_rx))
            ret = 1;
    }

    close(fd);
    return ret;
}
