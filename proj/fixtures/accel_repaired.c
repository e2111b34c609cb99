/*
 * ADXL345 accelerometer on /dev/spidev0.1: checks the device id, enables
 * measurement mode and samples the three axes.
 */

static const char *device = "/dev/spidev0.1";
static uint32_t mode = 3;
static uint8_t lsb_first = 0;
static uint8_t bits = 8;
static uint32_t speed = 2000000;

static void fail(const char *s)
{
    perror(s);
    exit(1);
}

static int adxl_transfer(int fd, uint8_t *tx, uint8_t *rx, int len)
{
    struct spi_ioc_transfer tr = {
        .tx_buf = (unsigned long)tx,
        .rx_buf = (unsigned long)rx,
        .len = len,
        .speed_hz = speed,
        .bits_per_word = bits,
    };
    int ret;

    ret = ioctl(fd, MSG, &tr);
    if (ret < 1)
        fail("spi transfer failed");
    return ret;
}

static uint8_t adxl_read_reg(int fd, uint8_t reg)
{
    uint8_t tx[2];
    uint8_t rx[2];

    tx[0] = reg | 0x80;
    tx[1] = 0;
    adxl_transfer(fd, tx, rx, 2);
    return rx[1];
}

static void adxl_write_reg(int fd, uint8_t reg, uint8_t value)
{
    uint8_t tx[2];
    uint8_t rx[2];

    tx[0] = reg;
    tx[1] = value;
    adxl_transfer(fd, tx, rx, 2);
}

static int adxl_read_axis(int fd, uint8_t reg)
{
    uint8_t lo = adxl_read_reg(fd, reg);
    uint8_t hi = adxl_read_reg(fd, reg + 1);
    return (int16_t)((hi << 8) | lo);
}

int main(void)
{
    int fd;
    int n;
    uint32_t actual_mode = 0;

    fd = open(device, O_RDWR);
    if (fd < 0)
        fail("can't open device");

    if (ioctl(fd, WR_MODE32, &mode) == -1) fail("can't set spi mode");
    if (ioctl(fd, WR_LSB_FIRST, &lsb_first) == -1) fail("can't set bit order");
    if (ioctl(fd, WR_BITS_PER_WORD, &bits) == -1) fail("can't set bits per word");
    if (ioctl(fd, WR_MAX_SPEED_HZ, &speed) == -1) fail("can't set max speed hz");
    if (ioctl(fd, RD_MODE32, &actual_mode) == -1) fail("can't get spi mode");
    printf("spi mode: 0x%x\n", actual_mode);

    if (adxl_read_reg(fd, 0x00) != 0xE5) {
        fprintf(stderr, "unexpected device id\n");
        close(fd);
        return 1;
    }

    adxl_write_reg(fd, 0x31, 0x0B);
    adxl_write_reg(fd, 0x2D, 0x08);

    for (n = 0; n < 100; n++) {
        int x = adxl_read_axis(fd, 0x32);
        int y = adxl_read_axis(fd, 0x34);
        int z = adxl_read_axis(fd, 0x36);
        printf("x=%d y=%d z=%d\n", x, y, z);
        usleep(100000);
    }

    close(fd);
    return 0;
}
